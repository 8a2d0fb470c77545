#pragma once

#include <array>
#include <string>
#include <unordered_map>

#include "plurilag/multi_index.hpp"

namespace plurilag::forms {

// Vertices of an elementary cube spanned by directions (i, j, k), named by
// which of the three spanned coordinates are raised.
enum class CubeLabel { X = 0, Xi, Xj, Xk, Xij, Xjk, Xik, Xijk };

const char* label_name(CubeLabel l);

// The six "octahedron" labels: everything except X and Xijk.
constexpr std::array<CubeLabel, 6> octa_labels() {
    return {CubeLabel::Xi,  CubeLabel::Xj,  CubeLabel::Xk,
            CubeLabel::Xij, CubeLabel::Xjk, CubeLabel::Xik};
}

// Opposite vertex of the cube (also the opposite vertex of the octahedron
// for the six middle labels): Xi <-> Xjk, Xj <-> Xik, Xk <-> Xij, X <-> Xijk.
CubeLabel antipode(CubeLabel l);

// The four octahedron labels adjacent to l (all six except l and its
// antipode). Requires an octahedron label.
std::array<CubeLabel, 4> octa_neighbors(CubeLabel l);

// Bitmask over the spanned directions (bit0 = di, bit1 = dj, bit2 = dk).
CubeLabel label_from_bits(unsigned bits);
unsigned label_bits(CubeLabel l);

struct CubeFields {
    double x = 0, xi = 0, xj = 0, xk = 0, xij = 0, xjk = 0, xik = 0, xijk = 0;

    double at(CubeLabel l) const;
    double& at(CubeLabel l);
};

// Real-valued field on a set of lattice vertices.
class FieldMap {
public:
    explicit FieldMap(int m) : m_(m) {}

    int dim() const { return m_; }
    size_t size() const { return v_.size(); }

    void set(const lattice::MultiIndex& at, double value);
    bool contains(const lattice::MultiIndex& at) const { return v_.count(at) > 0; }
    double at(const lattice::MultiIndex& at) const; // LookupError names the vertex

    const std::unordered_map<lattice::MultiIndex, double, lattice::MultiIndexHash>& items() const {
        return v_;
    }

private:
    int m_;
    std::unordered_map<lattice::MultiIndex, double, lattice::MultiIndexHash> v_;
};

} // namespace plurilag::forms
