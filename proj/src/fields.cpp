#include "plurilag/fields.hpp"

#include "plurilag/errors.hpp"

namespace plurilag::forms {

const char* label_name(CubeLabel l) {
    switch (l) {
        case CubeLabel::X: return "x";
        case CubeLabel::Xi: return "x_i";
        case CubeLabel::Xj: return "x_j";
        case CubeLabel::Xk: return "x_k";
        case CubeLabel::Xij: return "x_ij";
        case CubeLabel::Xjk: return "x_jk";
        case CubeLabel::Xik: return "x_ik";
        case CubeLabel::Xijk: return "x_ijk";
    }
    return "?";
}

CubeLabel antipode(CubeLabel l) {
    switch (l) {
        case CubeLabel::X: return CubeLabel::Xijk;
        case CubeLabel::Xijk: return CubeLabel::X;
        case CubeLabel::Xi: return CubeLabel::Xjk;
        case CubeLabel::Xjk: return CubeLabel::Xi;
        case CubeLabel::Xj: return CubeLabel::Xik;
        case CubeLabel::Xik: return CubeLabel::Xj;
        case CubeLabel::Xk: return CubeLabel::Xij;
        case CubeLabel::Xij: return CubeLabel::Xk;
    }
    throw CellError("bad cube label");
}

std::array<CubeLabel, 4> octa_neighbors(CubeLabel l) {
    std::array<CubeLabel, 4> out{};
    size_t n = 0;
    for (CubeLabel c : octa_labels())
        if (c != l && c != antipode(l)) out[n++] = c;
    if (n != 4) throw CellError(std::string("not an octahedron label: ") + label_name(l));
    return out;
}

CubeLabel label_from_bits(unsigned bits) {
    switch (bits & 7u) {
        case 0u: return CubeLabel::X;
        case 1u: return CubeLabel::Xi;
        case 2u: return CubeLabel::Xj;
        case 4u: return CubeLabel::Xk;
        case 3u: return CubeLabel::Xij;
        case 6u: return CubeLabel::Xjk;
        case 5u: return CubeLabel::Xik;
        default: return CubeLabel::Xijk;
    }
}

unsigned label_bits(CubeLabel l) {
    switch (l) {
        case CubeLabel::X: return 0u;
        case CubeLabel::Xi: return 1u;
        case CubeLabel::Xj: return 2u;
        case CubeLabel::Xk: return 4u;
        case CubeLabel::Xij: return 3u;
        case CubeLabel::Xjk: return 6u;
        case CubeLabel::Xik: return 5u;
        case CubeLabel::Xijk: return 7u;
    }
    throw CellError("bad cube label");
}

double CubeFields::at(CubeLabel l) const { return const_cast<CubeFields*>(this)->at(l); }

double& CubeFields::at(CubeLabel l) {
    switch (l) {
        case CubeLabel::X: return x;
        case CubeLabel::Xi: return xi;
        case CubeLabel::Xj: return xj;
        case CubeLabel::Xk: return xk;
        case CubeLabel::Xij: return xij;
        case CubeLabel::Xjk: return xjk;
        case CubeLabel::Xik: return xik;
        case CubeLabel::Xijk: return xijk;
    }
    throw CellError("bad cube label");
}

void FieldMap::set(const lattice::MultiIndex& at, double value) {
    if (at.dim() != m_)
        throw CellError("field vertex " + at.str() + " does not live in Z^" + std::to_string(m_));
    v_[at] = value;
}

double FieldMap::at(const lattice::MultiIndex& at) const {
    auto it = v_.find(at);
    if (it == v_.end()) throw LookupError("no field value at vertex " + at.str());
    return it->second;
}

} // namespace plurilag::forms
