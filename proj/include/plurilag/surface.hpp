#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plurilag/cells.hpp"

namespace plurilag::lattice {

// A finite coherently oriented disk-like patch of elementary squares in Z^m.
// Construction validates:
//   * every square lives in Z^m with distinct in-range directions,
//   * no square appears twice (up to orientation),
//   * coherent orientation: every directed edge is traversed at most once,
//   * connectedness through shared edges,
//   * Euler characteristic V - E + F = 1 (disk, no pinch points).
class QuadSurface {
public:
    QuadSurface(int m, std::vector<OrientedSquare> squares);

    int dim() const { return m_; }
    const std::vector<OrientedSquare>& squares() const { return squares_; }

    std::vector<MultiIndex> vertices() const;
    bool has_vertex(const MultiIndex& v) const;

    // A vertex is interior when its incident squares close up into a fan.
    bool is_interior(const MultiIndex& v) const;

    // Incident squares of an interior vertex in cyclic order (each adjacent
    // pair shares an edge at v). Throws DomainError for boundary or unknown
    // vertices.
    std::vector<OrientedSquare> flower(const MultiIndex& v) const;

    // Index of the stored square equal to s up to orientation, plus the
    // relative orientation (+1 same, -1 reversed).
    std::optional<std::pair<size_t, int>> find_square(const OrientedSquare& s) const;

private:
    int m_;
    std::vector<OrientedSquare> squares_;
    std::unordered_map<MultiIndex, std::vector<size_t>, MultiIndexHash> by_vertex_;
    struct EdgeHash {
        size_t operator()(const std::pair<MultiIndex, MultiIndex>& e) const {
            return MultiIndexHash{}(e.first) * 1000003u ^ MultiIndexHash{}(e.second);
        }
    };
    std::unordered_map<std::pair<MultiIndex, MultiIndex>, size_t, EdgeHash> directed_edge_;
};

// Lift of a flower around `center` to 3D-corners: every petal becomes the
// corner, at the same apex, of the cube it spans together with the unused
// direction `aux`. Petals must all contain `center` and avoid `aux`; at
// least two petals are required.
std::vector<Corner> lift_flower(const std::vector<OrientedSquare>& petals,
                                const MultiIndex& center, int aux);

// Corner surgery: if the surface meets `cube` in exactly the three faces at
// some vertex v (coherently), replace them by the three faces at the
// opposite vertex. `sign` reports the orientation: action(after) -
// action(before) equals sign times the fused-cube action of cube.sorted().
struct FlipResult {
    QuadSurface surface;
    MultiIndex removed_apex;
    MultiIndex added_apex;
    int sign = +1;
};

FlipResult flip(const QuadSurface& s, const OrientedCube& cube);
bool flippable(const QuadSurface& s, const OrientedCube& cube);

// Candidate cubes for flips: every cube having at least one face in the
// surface, directions sorted, deduplicated, in deterministic order.
std::vector<OrientedCube> candidate_cubes(const QuadSurface& s);

// Monotone staircase disk over an n1 x n2 cell grid: the graph of the
// integer height h(a,b) = clamp(hmax - a - b, 0, hmax), realised by top
// squares and the vertical squares across unit height drops. Coherently
// oriented; useful as a flip playground.
QuadSurface terrace_surface(int n1, int n2, int hmax);

} // namespace plurilag::lattice
