#include "plurilag/cells.hpp"

#include <algorithm>

namespace plurilag::lattice {

namespace {

void check_dir_range(const MultiIndex& base, int d) {
    if (d < 1 || d > base.dim())
        throw CellError("direction " + std::to_string(d) + " out of range for Z^" +
                        std::to_string(base.dim()));
}

} // namespace

OrientedSquare::OrientedSquare(MultiIndex b, int i, int j) : base(std::move(b)), di(i), dj(j) {
    check_dir_range(base, di);
    check_dir_range(base, dj);
    if (di == dj) throw CellError("square at " + base.str() + " has equal directions");
}

std::string OrientedSquare::str() const {
    return "square" + base.str() + "[" + std::to_string(di) + "," + std::to_string(dj) + "]";
}

OrientedSquare reverse(const OrientedSquare& s) { return OrientedSquare(s.base, s.dj, s.di); }

std::array<MultiIndex, 4> square_vertices(const OrientedSquare& s) {
    MultiIndex v0 = s.base;
    MultiIndex v1 = v0.shifted(s.di);
    MultiIndex v2 = v1.shifted(s.dj);
    MultiIndex v3 = v0.shifted(s.dj);
    return {v0, v1, v2, v3};
}

bool same_unoriented(const OrientedSquare& a, const OrientedSquare& b) {
    return a.base == b.base &&
           std::minmax(a.di, a.dj) == std::minmax(b.di, b.dj);
}

OrientedCube::OrientedCube(MultiIndex b, int i, int j, int k)
    : base(std::move(b)), di(i), dj(j), dk(k) {
    check_dir_range(base, di);
    check_dir_range(base, dj);
    check_dir_range(base, dk);
    if (di == dj || dj == dk || di == dk)
        throw CellError("cube at " + base.str() + " has repeated directions");
}

OrientedCube OrientedCube::sorted() const {
    std::array<int, 3> d{di, dj, dk};
    std::sort(d.begin(), d.end());
    return OrientedCube(base, d[0], d[1], d[2]);
}

std::string OrientedCube::str() const {
    return "cube" + base.str() + "[" + std::to_string(di) + "," + std::to_string(dj) + "," +
           std::to_string(dk) + "]";
}

std::array<SignedSquare, 6> cube_boundary(const OrientedCube& c) {
    const int i = c.di, j = c.dj, k = c.dk;
    // boundary = sum over cyclic (i,j,k) of (shift_k - 1) applied to the
    // (i,j) face; the un-shifted copies carry sign -1
    return {
        SignedSquare{OrientedSquare(c.base.shifted(k), i, j), +1},
        SignedSquare{OrientedSquare(c.base, i, j), -1},
        SignedSquare{OrientedSquare(c.base.shifted(i), j, k), +1},
        SignedSquare{OrientedSquare(c.base, j, k), -1},
        SignedSquare{OrientedSquare(c.base.shifted(j), k, i), +1},
        SignedSquare{OrientedSquare(c.base, k, i), -1},
    };
}

std::array<MultiIndex, 8> cube_vertices(const OrientedCube& c) {
    const MultiIndex& b = c.base;
    MultiIndex xi = b.shifted(c.di), xj = b.shifted(c.dj), xk = b.shifted(c.dk);
    return {b,
            xi,
            xj,
            xk,
            xi.shifted(c.dj),
            xj.shifted(c.dk),
            xi.shifted(c.dk),
            xi.shifted(c.dj).shifted(c.dk)};
}

MultiIndex cube_antipode(const OrientedCube& c, const MultiIndex& v) {
    MultiIndex out = v;
    for (int d : {c.di, c.dj, c.dk}) {
        int lo = c.base.at(d);
        int cur = v.at(d);
        if (cur == lo)
            out = out.shifted(d, +1);
        else if (cur == lo + 1)
            out = out.shifted(d, -1);
        else
            throw CellError("vertex " + v.str() + " is not a vertex of " + c.str());
    }
    // coordinates off the spanned directions must match the base
    auto verts = cube_vertices(c);
    if (std::find(verts.begin(), verts.end(), v) == verts.end())
        throw CellError("vertex " + v.str() + " is not a vertex of " + c.str());
    return out;
}

Corner::Corner(OrientedCube c, MultiIndex a) : cube(std::move(c)), apex(std::move(a)) {
    auto verts = cube_vertices(cube);
    if (std::find(verts.begin(), verts.end(), apex) == verts.end())
        throw CellError("corner apex " + apex.str() + " is not a vertex of " + cube.str());
}

std::string Corner::str() const { return "corner(" + cube.str() + " @ " + apex.str() + ")"; }

std::array<OrientedSquare, 3> corner_faces(const Corner& c) {
    // The corner surface is -1 times the boundary faces at the apex: faces
    // with boundary sign -1 enter as-is, faces with sign +1 reversed. Glued
    // along the three edges at the apex this is a coherently oriented disk.
    std::array<OrientedSquare, 3> out;
    size_t n = 0;
    for (const auto& f : cube_boundary(c.cube)) {
        auto verts = square_vertices(f.square);
        if (std::find(verts.begin(), verts.end(), c.apex) == verts.end()) continue;
        if (n == 3) throw CellError("internal: more than three faces at " + c.apex.str());
        out[n++] = (f.sign < 0) ? f.square : reverse(f.square);
    }
    if (n != 3) throw CellError("internal: fewer than three faces at " + c.apex.str());
    return out;
}

} // namespace plurilag::lattice
