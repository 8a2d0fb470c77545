#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "plurilag/multi_index.hpp"

namespace plurilag::lattice {

// Elementary square at `base` spanned by directions (di, dj), traversed
// base -> base+e_di -> base+e_di+e_dj -> base+e_dj. Reversing the
// orientation swaps di and dj.
struct OrientedSquare {
    MultiIndex base;
    int di = 0;
    int dj = 0;

    OrientedSquare() = default;
    OrientedSquare(MultiIndex b, int i, int j);

    bool operator==(const OrientedSquare&) const = default;
    std::string str() const;
};

OrientedSquare reverse(const OrientedSquare& s);

// Corners in cyclic order (x, x_i, x_ij, x_j).
std::array<MultiIndex, 4> square_vertices(const OrientedSquare& s);

// Same square up to orientation?
bool same_unoriented(const OrientedSquare& a, const OrientedSquare& b);

struct SquareHash {
    size_t operator()(const OrientedSquare& s) const {
        size_t h = MultiIndexHash{}(s.base);
        h ^= static_cast<size_t>(s.di) * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<size_t>(s.dj) * 0xbf58476d1ce4e5b9ull;
        return h;
    }
};

// Elementary cube at `base` spanned by pairwise-distinct directions
// (di, dj, dk); the direction order fixes its orientation.
struct OrientedCube {
    MultiIndex base;
    int di = 0;
    int dj = 0;
    int dk = 0;

    OrientedCube() = default;
    OrientedCube(MultiIndex b, int i, int j, int k);

    // Same cube with directions sorted ascending (canonical orientation sign).
    OrientedCube sorted() const;

    bool operator==(const OrientedCube&) const = default;
    std::string str() const;
};

struct SignedSquare {
    OrientedSquare square;
    int sign = 1; // +1 or -1
};

// The six faces of the cube with their boundary coefficients: the three
// faces through `base` carry sign -1, their opposite translates sign +1,
// so that a signed sum over faces telescopes (discrete Stokes).
std::array<SignedSquare, 6> cube_boundary(const OrientedCube& c);

// Vertices ordered (x, x_i, x_j, x_k, x_ij, x_jk, x_ik, x_ijk).
std::array<MultiIndex, 8> cube_vertices(const OrientedCube& c);

// Vertex of `c` opposite to v (flip all three spanned coordinates).
MultiIndex cube_antipode(const OrientedCube& c, const MultiIndex& v);

// Three faces of a cube sharing the vertex `apex`, oriented so that glued
// along their common edges they form a coherently oriented 3-square disk
// (the corner surface "seen from the apex").
struct Corner {
    OrientedCube cube;
    MultiIndex apex;

    Corner() = default;
    Corner(OrientedCube c, MultiIndex a);
    std::string str() const;
};

std::array<OrientedSquare, 3> corner_faces(const Corner& c);

} // namespace plurilag::lattice
