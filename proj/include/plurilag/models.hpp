#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "plurilag/fields.hpp"
#include "plurilag/rng.hpp"
#include "plurilag/two_form.hpp"

namespace plurilag::models {

// ---------------------------------------------------------------------------
// Multi-affine quad equations with octahedron relations.
//
// A face carries corners (x, xa, xab, xb) in cyclic order with parameters
// (aa, ab) attached to its two directions. q3d0 works in multiplicative
// variables (its residual is multi-affine in X = e^{2x} with a = e^alpha);
// callers feed X-values directly.
// ---------------------------------------------------------------------------

enum class QuadFamily { Q1d0, Q1d1, Q3d0, H1, H2, H3 };

class QuadModel {
public:
    static QuadModel by_name(const std::string& name, double delta = 0.0);
    static const std::vector<std::string>& names();

    const std::string& name() const { return name_; }
    QuadFamily family() const { return family_; }
    double delta() const { return delta_; }

    double quad_residual(double x, double xa, double xab, double xb, double aa, double ab) const;

    // Solve the quad equation for the corner at `slot` (0..3 cyclic); exact
    // affine inversion. DomainError when the equation degenerates.
    double solve_corner(int slot, std::array<double, 4> corners, double aa, double ab) const;

    // Extended-precision variant used by box propagation, where stored-field
    // roundoff would otherwise be amplified through chains of
    // ill-conditioned solves.
    long double solve_corner_ld(int slot, std::array<long double, 4> corners, long double aa,
                                long double ab) const;

    // Additive residual of the octahedron relation on the six middle fields
    // (products are taken in log space; ratio must be positive).
    double octahedron_residual(const forms::CubeFields& f,
                               const std::array<double, 3>& alpha) const;

    // Admissible random initial data (x, x_i, x_j, x_k) plus parameters.
    void sample_cube(Rng& rng, forms::CubeFields& f, std::array<double, 3>& alpha) const;

private:
    QuadModel(QuadFamily fam, std::string name, double delta)
        : family_(fam), name_(std::move(name)), delta_(delta) {}

    QuadFamily family_;
    std::string name_;
    double delta_;
};

// ---------------------------------------------------------------------------
// Three-point Lagrangian models.
//
// q1d0:      L = a log|x-y|, Lam = (a-b) log|x-y| (closed form).
// exp:       dL/dx = log(a - e^{y-x}), dLam/dx = log((a-b e^{y-x})/(b-a e^{y-x})),
//            values recovered by adaptive quadrature from base point 0.
// exp-gamma: dL/dx = log((a - e^{y-x})/(1 - gamma a e^{y-x})), same Lam.
// ---------------------------------------------------------------------------

enum class LagrangianFamily { Q1d0, Exp };

class LagrangianModel {
public:
    static LagrangianModel by_name(const std::string& name, double gamma = 0.0);
    static const std::vector<std::string>& names();

    const std::string& name() const { return name_; }
    LagrangianFamily family() const { return family_; }
    double gamma() const { return gamma_; }

    // legs and their antiderivatives
    double psi(double x, double y, double a) const; // dL/dx
    double phi(double x, double y, double a, double b) const; // dLam/dx
    double L(double x, double y, double a) const;
    double Lam(double x, double y, double a, double b) const;

    forms::ThreePointLegs legs() const;
    forms::ThreePointForm form(std::vector<double> alpha_by_dir) const;

    // Corner equations dS/dx_label in closed form (for the exponential
    // family: logs of the X-variable four-factor products), kept separate
    // from the leg assembly in the forms module as a second route.
    double corner_residual_closed(const forms::CubeFields& f, const std::array<double, 3>& alpha,
                                  forms::CubeLabel label) const;

    // Octahedron relation residual: log-ratio for q1d0; the additive
    // X-variable relation for exp; log of the deformed three-factor product
    // when gamma != 0.
    double octahedron_residual(const forms::CubeFields& f,
                               const std::array<double, 3>& alpha) const;

    // Random admissible parameters plus the standard initial data
    // {x_i, x_j, x_ij, x_ik} for cube completion.
    struct CubeSample {
        std::array<double, 3> alpha{};
        std::array<std::optional<double>, 6> given{}; // octahedron-label order
    };
    CubeSample sample_cube(Rng& rng) const;

    // Random admissible parameters plus all six octahedron fields (no
    // completion), for identity and limit checks.
    void sample_octa(Rng& rng, forms::CubeFields& f, std::array<double, 3>& alpha) const;

    // Margin checks on a full octahedron field set: every leg the six corner
    // equations touch stays at least `margin` inside its domain.
    bool admissible_octa(const forms::CubeFields& f, const std::array<double, 3>& alpha,
                         double margin = 1e-3) const;

    // The relativistic Toda product at a Z^2 vertex: fields at the center,
    // its space neighbours (sp = +e1, sm = -e1), time neighbours (tp = +e2,
    // tm = -e2) and the mixed corners sp_tm = +e1-e2, sm_tp = -e1+e2;
    // parameters (a1, a2) on the two directions. Equals 1 exactly when the
    // center is critical for the action (gamma = 0 family only).
    double toda_product(double x, double x_sp, double x_sm, double x_tp, double x_tm,
                        double x_sp_tm, double x_sm_tp, double a1, double a2) const;

private:
    LagrangianModel(LagrangianFamily fam, std::string name, double gamma)
        : family_(fam), name_(std::move(name)), gamma_(gamma) {}

    LagrangianFamily family_;
    std::string name_;
    double gamma_;
};

// Deformed three-leg form centered at X_i on the quad (X, X_i, X_ik, X_k)
// in multiplicative variables: log of the printed product (zero iff the
// form holds). Requires gamma > 0; the gamma -> 0 limit of the product is
// singular.
double rescaled_q3_three_leg(double X, double Xi, double Xik, double Xk, double ai, double ak,
                             double gamma);

// The multi-affine quad-equation equivalent to the three-leg form above.
double rescaled_q3_residual(double X, double Xi, double Xik, double Xk, double ai, double ak,
                            double gamma);

} // namespace plurilag::models
