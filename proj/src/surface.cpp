#include "plurilag/surface.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace plurilag::lattice {

namespace {

std::pair<MultiIndex, MultiIndex> undirected(const MultiIndex& u, const MultiIndex& w) {
    return (u < w) ? std::make_pair(u, w) : std::make_pair(w, u);
}

std::array<std::pair<MultiIndex, MultiIndex>, 4> directed_edges(const OrientedSquare& s) {
    auto v = square_vertices(s);
    return {std::make_pair(v[0], v[1]), std::make_pair(v[1], v[2]), std::make_pair(v[2], v[3]),
            std::make_pair(v[3], v[0])};
}

} // namespace

QuadSurface::QuadSurface(int m, std::vector<OrientedSquare> squares)
    : m_(m), squares_(std::move(squares)) {
    if (m_ < 2) throw CellError("surface dimension must be at least 2, got " + std::to_string(m_));
    if (squares_.empty()) throw CellError("surface has no squares");

    std::map<std::tuple<MultiIndex, int, int>, size_t> seen; // unoriented key
    for (size_t q = 0; q < squares_.size(); ++q) {
        const auto& s = squares_[q];
        if (s.base.dim() != m_)
            throw CellError("square " + std::to_string(q) + ": base " + s.base.str() +
                            " does not live in Z^" + std::to_string(m_));
        if (s.di < 1 || s.di > m_ || s.dj < 1 || s.dj > m_ || s.di == s.dj)
            throw CellError("square " + std::to_string(q) + ": invalid directions (" +
                            std::to_string(s.di) + "," + std::to_string(s.dj) + ")");
        auto [lo, hi] = std::minmax(s.di, s.dj);
        auto key = std::make_tuple(s.base, lo, hi);
        auto [it, fresh] = seen.emplace(key, q);
        if (!fresh)
            throw CellError("square " + std::to_string(q) + " duplicates square " +
                            std::to_string(it->second) + " (up to orientation)");
    }

    // directed edges: coherence means no directed edge is traversed twice
    for (size_t q = 0; q < squares_.size(); ++q) {
        for (const auto& e : directed_edges(squares_[q])) {
            auto [it, fresh] = directed_edge_.emplace(e, q);
            if (!fresh)
                throw CellError("square " + std::to_string(q) + ": directed edge " +
                                e.first.str() + "->" + e.second.str() +
                                " already traversed by square " + std::to_string(it->second) +
                                "; orientations are incoherent");
        }
        for (const auto& v : square_vertices(squares_[q])) by_vertex_[v].push_back(q);
    }

    // connectivity through shared (undirected) edges
    std::map<std::pair<MultiIndex, MultiIndex>, std::vector<size_t>> edge_squares;
    for (size_t q = 0; q < squares_.size(); ++q)
        for (const auto& e : directed_edges(squares_[q]))
            edge_squares[undirected(e.first, e.second)].push_back(q);

    std::vector<char> seen_sq(squares_.size(), 0);
    std::deque<size_t> queue{0};
    seen_sq[0] = 1;
    while (!queue.empty()) {
        size_t q = queue.front();
        queue.pop_front();
        for (const auto& e : directed_edges(squares_[q]))
            for (size_t r : edge_squares[undirected(e.first, e.second)])
                if (!seen_sq[r]) {
                    seen_sq[r] = 1;
                    queue.push_back(r);
                }
    }
    for (size_t q = 0; q < squares_.size(); ++q)
        if (!seen_sq[q])
            throw CellError("surface is not edge-connected (square " + std::to_string(q) +
                            " unreachable from square 0)");

    // disk check: V - E + F = 1 rules out handles, pinch points, annuli
    long V = static_cast<long>(by_vertex_.size());
    long E = static_cast<long>(edge_squares.size());
    long F = static_cast<long>(squares_.size());
    if (V - E + F != 1)
        throw CellError("surface is not a disk: V-E+F = " + std::to_string(V - E + F));
}

std::vector<MultiIndex> QuadSurface::vertices() const {
    std::vector<MultiIndex> out;
    out.reserve(by_vertex_.size());
    for (const auto& [v, ids] : by_vertex_) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

bool QuadSurface::has_vertex(const MultiIndex& v) const { return by_vertex_.count(v) > 0; }

// Walk the fan of squares around v: from a square traversing edge v->u, the
// next petal is the square traversing u->v. The vertex is interior iff the
// walk closes through all incident squares.
bool QuadSurface::is_interior(const MultiIndex& v) const {
    auto it = by_vertex_.find(v);
    if (it == by_vertex_.end()) return false;
    const auto& ids = it->second;
    size_t start = ids.front();
    size_t cur = start;
    size_t steps = 0;
    do {
        auto verts = square_vertices(squares_[cur]);
        size_t p = 0;
        while (verts[p] != v) ++p;
        const MultiIndex& u = verts[(p + 1) % 4];
        auto next = directed_edge_.find({u, v});
        if (next == directed_edge_.end()) return false; // boundary edge
        cur = next->second;
        if (++steps > ids.size()) return false; // defensive; cannot cycle early
    } while (cur != start);
    return steps == ids.size();
}

std::vector<OrientedSquare> QuadSurface::flower(const MultiIndex& v) const {
    auto it = by_vertex_.find(v);
    if (it == by_vertex_.end())
        throw DomainError("vertex " + v.str() + " does not belong to the surface");
    if (!is_interior(v))
        throw DomainError("vertex " + v.str() + " is not interior (open fan of " +
                          std::to_string(it->second.size()) + " squares)");
    std::vector<OrientedSquare> petals;
    size_t start = it->second.front();
    size_t cur = start;
    do {
        petals.push_back(squares_[cur]);
        auto verts = square_vertices(squares_[cur]);
        size_t p = 0;
        while (verts[p] != v) ++p;
        cur = directed_edge_.at({verts[(p + 1) % 4], v});
    } while (cur != start);
    return petals;
}

std::optional<std::pair<size_t, int>> QuadSurface::find_square(const OrientedSquare& s) const {
    auto it = by_vertex_.find(s.base);
    if (it == by_vertex_.end()) return std::nullopt;
    for (size_t q : it->second) {
        if (!same_unoriented(squares_[q], s)) continue;
        return std::make_pair(q, squares_[q] == s ? +1 : -1);
    }
    return std::nullopt;
}

std::vector<Corner> lift_flower(const std::vector<OrientedSquare>& petals,
                                const MultiIndex& center, int aux) {
    if (petals.size() < 2)
        throw DomainError("flower at " + center.str() + " has fewer than two petals");
    std::vector<Corner> out;
    out.reserve(petals.size());
    for (size_t t = 0; t < petals.size(); ++t) {
        const auto& p = petals[t];
        if (aux < 1 || aux > p.base.dim() || aux == p.di || aux == p.dj)
            throw CellError("petal " + std::to_string(t) + ": auxiliary direction " +
                            std::to_string(aux) + " is not free");
        auto verts = square_vertices(p);
        if (std::find(verts.begin(), verts.end(), center) == verts.end())
            throw CellError("petal " + std::to_string(t) + " does not contain " + center.str());
        // The (di,dj)-face through the cube base carries boundary sign -1, so
        // the petal reappears in the corner surface with its own orientation.
        out.emplace_back(OrientedCube(p.base, p.di, p.dj, aux), center);
    }
    return out;
}

FlipResult flip(const QuadSurface& s, const OrientedCube& cube) {
    OrientedCube c = cube.sorted();
    auto bd = cube_boundary(c);

    std::vector<size_t> present;                       // indices into s.squares()
    std::vector<const OrientedSquare*> present_faces;  // the matching bd faces
    for (const auto& f : bd)
        if (auto hit = s.find_square(f.square)) {
            present.push_back(hit->first);
            present_faces.push_back(&f.square);
        }
    if (present.size() != 3)
        throw CellError("flip: surface meets " + c.str() + " in " +
                        std::to_string(present.size()) + " faces, need exactly 3");

    // the three faces must share one cube vertex (the corner apex)
    std::optional<MultiIndex> apex;
    for (const auto& v : cube_vertices(c)) {
        bool in_all = true;
        for (const auto* f : present_faces) {
            auto verts = square_vertices(*f);
            if (std::find(verts.begin(), verts.end(), v) == verts.end()) in_all = false;
        }
        if (in_all) {
            apex = v;
            break;
        }
    }
    if (!apex) throw CellError("flip: the three faces in " + c.str() + " do not form a corner");

    // relative orientation of the stored corner against the canonical one
    int sign = 0;
    for (const auto& f : corner_faces(Corner(c, *apex))) {
        auto hit = s.find_square(f);
        if (!hit) throw CellError("internal: corner face lookup failed");
        if (sign == 0)
            sign = hit->second;
        else if (sign != hit->second)
            throw CellError("flip: corner faces of " + c.str() + " have mixed orientations");
    }

    MultiIndex w = cube_antipode(c, *apex);
    std::vector<OrientedSquare> next = s.squares();
    std::vector<size_t> drop(present);
    std::sort(drop.begin(), drop.end(), std::greater<>());
    for (size_t q : drop) next.erase(next.begin() + static_cast<long>(q));
    for (const auto& f : corner_faces(Corner(c, w))) {
        OrientedSquare nf = (sign > 0) ? reverse(f) : f;
        if (s.find_square(nf))
            throw CellError("flip: replacement face " + nf.str() + " already in the surface");
        next.push_back(nf);
    }

    return FlipResult{QuadSurface(s.dim(), std::move(next)), *apex, w, sign};
}

bool flippable(const QuadSurface& s, const OrientedCube& cube) {
    try {
        flip(s, cube);
        return true;
    } catch (const CellError&) {
        return false;
    }
}

std::vector<OrientedCube> candidate_cubes(const QuadSurface& s) {
    std::vector<OrientedCube> out;
    std::set<std::tuple<MultiIndex, int, int, int>> seen;
    for (const auto& sq : s.squares()) {
        for (int k = 1; k <= s.dim(); ++k) {
            if (k == sq.di || k == sq.dj) continue;
            for (int down : {0, -1}) {
                OrientedCube c =
                    OrientedCube(sq.base.shifted(k, down), sq.di, sq.dj, k).sorted();
                if (seen.emplace(c.base, c.di, c.dj, c.dk).second) out.push_back(c);
            }
        }
    }
    return out;
}

QuadSurface terrace_surface(int n1, int n2, int hmax) {
    if (n1 < 1 || n2 < 1 || hmax < 0) throw CellError("terrace: grid must be positive");
    auto h = [&](int a, int b) { return std::max(hmax - a - b, 0); };
    std::vector<OrientedSquare> sq;
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n2; ++b) {
            sq.emplace_back(MultiIndex({a, b, h(a, b)}), 1, 2); // top of the cell
            // unit drop towards +e1 between cells (a,b) and (a+1,b)
            if (a + 1 < n1 && h(a + 1, b) == h(a, b) - 1)
                sq.emplace_back(MultiIndex({a + 1, b, h(a + 1, b)}), 2, 3);
            // unit drop towards +e2
            if (b + 1 < n2 && h(a, b + 1) == h(a, b) - 1)
                sq.emplace_back(MultiIndex({a, b + 1, h(a, b + 1)}), 3, 1);
        }
    return QuadSurface(3, std::move(sq));
}

} // namespace plurilag::lattice
