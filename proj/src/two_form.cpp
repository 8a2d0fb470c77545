#include "plurilag/two_form.hpp"

#include <algorithm>

namespace plurilag::forms {

namespace {

struct FaceDesc {
    int da, db;          // spanning directions of the face
    unsigned abit, bbit; // their bits in label space
    unsigned obits;      // base offset of the face
    int sign;            // boundary coefficient
};

// boundary of the (di,dj,dk) cube in label space: cyclic (i,j), (j,k), (k,i)
// pairs, the face through the cube base with sign -1, its translate +1
std::array<FaceDesc, 6> boundary_faces(int di, int dj, int dk) {
    return {FaceDesc{di, dj, 1u, 2u, 4u, +1}, FaceDesc{di, dj, 1u, 2u, 0u, -1},
            FaceDesc{dj, dk, 2u, 4u, 1u, +1}, FaceDesc{dj, dk, 2u, 4u, 0u, -1},
            FaceDesc{dk, di, 4u, 1u, 2u, +1}, FaceDesc{dk, di, 4u, 1u, 0u, -1}};
}

std::array<CubeLabel, 4> face_corners(const FaceDesc& fd) {
    return {label_from_bits(fd.obits), label_from_bits(fd.obits | fd.abit),
            label_from_bits(fd.obits | fd.abit | fd.bbit), label_from_bits(fd.obits | fd.bbit)};
}

SquareValues face_values(const CubeFields& f, const FaceDesc& fd) {
    auto c = face_corners(fd);
    return SquareValues{f.at(c[0]), f.at(c[1]), f.at(c[2]), f.at(c[3])};
}

} // namespace

double TwoForm::cube_action_generic(const CubeFields& f, int di, int dj, int dk) const {
    double s = 0;
    for (const auto& fd : boundary_faces(di, dj, dk))
        s += fd.sign * value(fd.da, fd.db, face_values(f, fd));
    return s;
}

double TwoForm::corner_residual_generic(const CubeFields& f, int di, int dj, int dk,
                                        CubeLabel label) const {
    double s = 0;
    for (const auto& fd : boundary_faces(di, dj, dk)) {
        auto corners = face_corners(fd);
        for (size_t p = 0; p < 4; ++p)
            if (corners[p] == label) s += fd.sign * gradient(fd.da, fd.db, face_values(f, fd))[p];
    }
    return s;
}

double TwoForm::cube_action(const CubeFields& f, int di, int dj, int dk) const {
    return cube_action_generic(f, di, dj, dk);
}

double TwoForm::corner_residual(const CubeFields& f, int di, int dj, int dk,
                                CubeLabel label) const {
    return corner_residual_generic(f, di, dj, dk, label);
}

ThreePointForm::ThreePointForm(ThreePointLegs legs, std::vector<double> alpha_by_dir)
    : legs_(std::move(legs)), alpha_(std::move(alpha_by_dir)) {
    if (alpha_.empty()) throw CellError("three-point form needs at least one direction parameter");
}

double ThreePointForm::alpha(int dir) const {
    if (dir < 1 || dir > static_cast<int>(alpha_.size()))
        throw CellError("no parameter for direction " + std::to_string(dir));
    return alpha_[static_cast<size_t>(dir - 1)];
}

double ThreePointForm::value(int da, int db, const SquareValues& v) const {
    if (da == db)
        throw CellError("square directions must differ, got (" + std::to_string(da) + ", " +
                        std::to_string(db) + ")");
    const double aa = alpha(da), ab = alpha(db);
    return legs_.L(v.x, v.xa, aa) - legs_.L(v.x, v.xb, ab) - legs_.Lam(v.xa, v.xb, aa, ab);
}

std::array<double, 4> ThreePointForm::gradient(int da, int db, const SquareValues& v) const {
    if (da == db)
        throw CellError("square directions must differ, got (" + std::to_string(da) + ", " +
                        std::to_string(db) + ")");
    const double aa = alpha(da), ab = alpha(db);
    return {legs_.Lx(v.x, v.xa, aa) - legs_.Lx(v.x, v.xb, ab),
            legs_.Ly(v.x, v.xa, aa) - legs_.Lamx(v.xa, v.xb, aa, ab),
            0.0,
            -legs_.Ly(v.x, v.xb, ab) + legs_.Lamx(v.xb, v.xa, ab, aa)};
}

double ThreePointForm::cube_action(const CubeFields& f, int di, int dj, int dk) const {
    return cube_action_legs(legs_, f, {alpha(di), alpha(dj), alpha(dk)});
}

double ThreePointForm::corner_residual(const CubeFields& f, int di, int dj, int dk,
                                       CubeLabel label) const {
    return corner_residual_legs(legs_, f, {alpha(di), alpha(dj), alpha(dk)}, label);
}

double corner_residual_legs(const ThreePointLegs& g, const CubeFields& f,
                            const std::array<double, 3>& alpha, CubeLabel label) {
    const double ai = alpha[0], aj = alpha[1], ak = alpha[2];
    // Lam_y(x, y; a, b) = -Lamx(y, x; b, a) is already folded in.
    switch (label) {
        case CubeLabel::X:
        case CubeLabel::Xijk:
            return 0.0; // the fused-cube action does not involve these fields
        case CubeLabel::Xi:
            return g.Lx(f.xi, f.xij, aj) - g.Lx(f.xi, f.xik, ak) - g.Lamx(f.xi, f.xk, ai, ak) +
                   g.Lamx(f.xi, f.xj, ai, aj);
        case CubeLabel::Xj:
            return g.Lx(f.xj, f.xjk, ak) - g.Lx(f.xj, f.xij, ai) - g.Lamx(f.xj, f.xi, aj, ai) +
                   g.Lamx(f.xj, f.xk, aj, ak);
        case CubeLabel::Xk:
            return g.Lx(f.xk, f.xik, ai) - g.Lx(f.xk, f.xjk, aj) - g.Lamx(f.xk, f.xj, ak, aj) +
                   g.Lamx(f.xk, f.xi, ak, ai);
        case CubeLabel::Xij:
            return g.Ly(f.xi, f.xij, aj) - g.Ly(f.xj, f.xij, ai) - g.Lamx(f.xij, f.xik, aj, ak) +
                   g.Lamx(f.xij, f.xjk, ai, ak);
        case CubeLabel::Xjk:
            return g.Ly(f.xj, f.xjk, ak) - g.Ly(f.xk, f.xjk, aj) - g.Lamx(f.xjk, f.xij, ak, ai) +
                   g.Lamx(f.xjk, f.xik, aj, ai);
        case CubeLabel::Xik:
            return g.Ly(f.xk, f.xik, ai) - g.Ly(f.xi, f.xik, ak) - g.Lamx(f.xik, f.xjk, ai, aj) +
                   g.Lamx(f.xik, f.xij, ak, aj);
    }
    throw CellError("bad cube label");
}

double cube_action_legs(const ThreePointLegs& g, const CubeFields& f,
                        const std::array<double, 3>& alpha) {
    const double ai = alpha[0], aj = alpha[1], ak = alpha[2];
    return g.L(f.xi, f.xij, aj) + g.L(f.xj, f.xjk, ak) + g.L(f.xk, f.xik, ai)  //
           - g.L(f.xi, f.xik, ak) - g.L(f.xj, f.xij, ai) - g.L(f.xk, f.xjk, aj)
           - g.Lam(f.xij, f.xik, aj, ak) - g.Lam(f.xjk, f.xij, ak, ai) -
           g.Lam(f.xik, f.xjk, ai, aj)                                        //
           + g.Lam(f.xj, f.xk, aj, ak) + g.Lam(f.xk, f.xi, ak, ai) + g.Lam(f.xi, f.xj, ai, aj);
}

CubeFields cube_fields(const FieldMap& f, const lattice::OrientedCube& cube) {
    const auto verts = lattice::cube_vertices(cube); // in cube-label order
    CubeFields out;
    for (size_t s = 0; s < verts.size(); ++s)
        out.at(static_cast<CubeLabel>(s)) = f.at(verts[s]);
    return out;
}

double action(const lattice::QuadSurface& s, const FieldMap& f, const TwoForm& form) {
    double total = 0;
    for (const auto& sq : s.squares()) {
        auto v = square_vertices(sq);
        SquareValues sv{f.at(v[0]), f.at(v[1]), f.at(v[2]), f.at(v[3])};
        total += form.value(sq.di, sq.dj, sv);
    }
    return total;
}

double el_residual(const lattice::QuadSurface& s, const FieldMap& f, const TwoForm& form,
                   const lattice::MultiIndex& v) {
    double total = 0;
    for (const auto& petal : s.flower(v)) {
        auto verts = square_vertices(petal);
        SquareValues sv{f.at(verts[0]), f.at(verts[1]), f.at(verts[2]), f.at(verts[3])};
        auto g = form.gradient(petal.di, petal.dj, sv);
        for (size_t p = 0; p < 4; ++p)
            if (verts[p] == v) total += g[p];
    }
    return total;
}

double corner_surface_residual(const TwoForm& form, const lattice::Corner& c, const FieldMap& f) {
    double total = 0;
    for (const auto& face : corner_faces(c)) {
        auto verts = square_vertices(face);
        SquareValues sv{f.at(verts[0]), f.at(verts[1]), f.at(verts[2]), f.at(verts[3])};
        auto g = form.gradient(face.di, face.dj, sv);
        for (size_t p = 0; p < 4; ++p)
            if (verts[p] == c.apex) total += g[p];
    }
    return total;
}

} // namespace plurilag::forms
