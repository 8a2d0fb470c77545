#pragma once

#include <array>
#include <functional>
#include <vector>

#include "plurilag/cells.hpp"
#include "plurilag/fields.hpp"
#include "plurilag/surface.hpp"

namespace plurilag::forms {

// Field values at the cyclic corners (x, x_a, x_ab, x_b) of a square
// spanned by directions (a, b).
struct SquareValues {
    double x = 0, xa = 0, xab = 0, xb = 0;
};

// Discrete 2-form: a real function of oriented squares (through the field
// values at their corners) with L(reversed square) = -L(square). Reversal
// antisymmetry is the caller-visible contract; implementations receive the
// direction pair and must honour it.
class TwoForm {
public:
    virtual ~TwoForm() = default;

    virtual double value(int da, int db, const SquareValues& v) const = 0;

    // d/d(corner) in the cyclic corner order of `value`.
    virtual std::array<double, 4> gradient(int da, int db, const SquareValues& v) const = 0;

    // Action of the fused cube spanned by (di,dj,dk): signed sum of `value`
    // over the six boundary faces.
    virtual double cube_action(const CubeFields& f, int di, int dj, int dk) const;

    // Derivative of the fused-cube action by the field at `label`.
    virtual double corner_residual(const CubeFields& f, int di, int dj, int dk,
                                   CubeLabel label) const;

    // Generic signed-face-gradient assembly; kept callable as an independent
    // route even when a subclass overrides corner_residual.
    double corner_residual_generic(const CubeFields& f, int di, int dj, int dk,
                                   CubeLabel label) const;
    double cube_action_generic(const CubeFields& f, int di, int dj, int dk) const;
};

// Legs of a three-point form L(sigma_ij) = L(x, x_i; a_i) - L(x, x_j; a_j)
// - Lam(x_i, x_j; a_i, a_j) with Lam(x, y; a, b) = -Lam(y, x; b, a).
// Lx/Ly/Lamx are the partial derivatives by the first/second point; the
// derivative of Lam by its second point is recovered through the
// skew-symmetry, Lam_y(x, y; a, b) = -Lamx(y, x; b, a).
struct ThreePointLegs {
    std::function<double(double, double, double)> L;
    std::function<double(double, double, double)> Lx;
    std::function<double(double, double, double)> Ly;
    std::function<double(double, double, double, double)> Lam;
    std::function<double(double, double, double, double)> Lamx;
};

class ThreePointForm : public TwoForm {
public:
    ThreePointForm(ThreePointLegs legs, std::vector<double> alpha_by_dir);

    double alpha(int dir) const;
    const std::vector<double>& alphas() const { return alpha_; }
    const ThreePointLegs& legs() const { return legs_; }

    double value(int da, int db, const SquareValues& v) const override;
    std::array<double, 4> gradient(int da, int db, const SquareValues& v) const override;

    // Independent of x and x_ijk; assembled from the twelve leg terms.
    double cube_action(const CubeFields& f, int di, int dj, int dk) const override;

    // Exactly zero at X and Xijk; four-leg corner equations otherwise.
    double corner_residual(const CubeFields& f, int di, int dj, int dk,
                           CubeLabel label) const override;

private:
    ThreePointLegs legs_;
    std::vector<double> alpha_;
};

// Four-leg corner equations dS/dx_label assembled from the legs, with
// alpha = (a_i, a_j, a_k) in the cube frame. Zero at X and Xijk.
double corner_residual_legs(const ThreePointLegs& legs, const CubeFields& f,
                            const std::array<double, 3>& alpha, CubeLabel label);

// Twelve-term fused-cube action of a three-point form (never touches f.x or
// f.xijk).
double cube_action_legs(const ThreePointLegs& legs, const CubeFields& f,
                        const std::array<double, 3>& alpha);

// Field values at the eight vertices of a lattice cube, in cube-label order.
CubeFields cube_fields(const FieldMap& f, const lattice::OrientedCube& cube);

// Action sum over all squares of the surface.
double action(const lattice::QuadSurface& s, const FieldMap& f, const TwoForm& form);

// Variation of `action` by the field at the interior vertex v.
double el_residual(const lattice::QuadSurface& s, const FieldMap& f, const TwoForm& form,
                   const lattice::MultiIndex& v);

// Variation of the 3-square corner-surface action by the field at the apex
// (the apex lies on the boundary of that surface, so this is assembled
// directly from the faces).
double corner_surface_residual(const TwoForm& form, const lattice::Corner& c, const FieldMap& f);

} // namespace plurilag::forms
