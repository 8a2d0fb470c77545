#include "plurilag/models.hpp"

#include <algorithm>
#include <cmath>

#include "plurilag/errors.hpp"
#include "plurilag/quadrature.hpp"

namespace plurilag::models {

namespace {

// log(num/den) with the admissibility convention of the leg it represents:
// both factors strictly positive.
double log_pos_ratio(double num, double den) {
    if (!(num > 0.0) || !(den > 0.0))
        throw DomainError("non-positive log argument in corner factor");
    return std::log(num) - std::log(den);
}

// log(num/den) for difference-kernel factors: a strictly positive ratio,
// signs of num and den equal.
double log_ratio(double num, double den) {
    if (num == 0.0 || den == 0.0 || ((num > 0.0) != (den > 0.0)))
        throw DomainError("corner factor ratio not positive");
    return std::log(std::abs(num)) - std::log(std::abs(den));
}

double nonzero(double d, const char* what) {
    if (d == 0.0) throw DomainError(std::string("vanishing difference in ") + what);
    return d;
}

std::vector<double> draw_separated(Rng& rng, int n, double lo, double hi, double minsep) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::vector<double> v;
        for (int i = 0; i < n; ++i) v.push_back(rng.uniform(lo, hi));
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(v[static_cast<size_t>(i)] - v[static_cast<size_t>(j)]) < minsep) {
                    ok = false;
                    break;
                }
        if (ok) return v;
    }
    throw SolveError("sampling box too tight for requested separation");
}

// three values with consecutive gaps in [glo, ghi], randomly permuted
std::array<double, 3> spread_triple(Rng& rng, double base, double glo, double ghi) {
    const double d1 = rng.uniform(glo, ghi);
    const double d2 = rng.uniform(glo, ghi);
    std::array<double, 3> offs{0.0, d1, d1 + d2};
    // Fisher-Yates with deterministic draws
    for (int i = 2; i > 0; --i) std::swap(offs[static_cast<size_t>(i)],
                                          offs[static_cast<size_t>(rng.uniform_int(0, i))]);
    return {base + offs[0], base + offs[1], base + offs[2]};
}

} // namespace

// ---------------------------------------------------------------------- quad

QuadModel QuadModel::by_name(const std::string& name, double delta) {
    if (name == "q1d0") return QuadModel(QuadFamily::Q1d0, name, 0.0);
    if (name == "q1d1") return QuadModel(QuadFamily::Q1d1, name, 0.0);
    if (name == "q3d0") return QuadModel(QuadFamily::Q3d0, name, 0.0);
    if (name == "h1") return QuadModel(QuadFamily::H1, name, 0.0);
    if (name == "h2") return QuadModel(QuadFamily::H2, name, 0.0);
    if (name == "h3") return QuadModel(QuadFamily::H3, name, delta);
    throw DomainError("unknown quad model '" + name + "'");
}

const std::vector<std::string>& QuadModel::names() {
    static const std::vector<std::string> n{"q1d0", "q1d1", "q3d0", "h1", "h2", "h3"};
    return n;
}

namespace {

template <typename T>
T quad_residual_t(QuadFamily family, double delta, T x, T xa, T xab, T xb, T aa, T ab) {
    switch (family) {
        case QuadFamily::Q1d0: // cross-ratio equation, cleared
            return ab * (x - xa) * (xab - xb) - aa * (xa - xab) * (xb - x);
        case QuadFamily::Q1d1: // shifted cross-ratio, cleared
            return ab * (x - xa + aa) * (xab - xb + aa) - aa * (xa - xab - ab) * (xb - x - ab);
        case QuadFamily::Q3d0: {
            // hyperbolic shifted cross-ratio, multi-affine in X = e^{2x},
            // A = e^{2 alpha}; the sinh half-angle prefactors cancel exactly
            const T A2 = std::exp(2 * aa), B2 = std::exp(2 * ab);
            const T A4 = A2 * A2, B4 = B2 * B2;
            return (B4 - 1) * (A2 * x - xa) * (A2 * xab - xb) -
                   (A4 - 1) * (xa - B2 * xab) * (xb - B2 * x);
        }
        case QuadFamily::H1: return (x - xab) * (xa - xb) - (aa - ab);
        case QuadFamily::H2:
            return (x - xab) * (xa - xb) + (ab - aa) * (x + xa + xb + xab) + ab * ab - aa * aa;
        case QuadFamily::H3:
            return aa * (x * xa + xb * xab) - ab * (x * xb + xa * xab) +
                   T(delta) * (aa * aa - ab * ab);
    }
    throw DomainError("bad quad family");
}

} // namespace

double QuadModel::quad_residual(double x, double xa, double xab, double xb, double aa,
                                double ab) const {
    return quad_residual_t<double>(family_, delta_, x, xa, xab, xb, aa, ab);
}

double QuadModel::solve_corner(int slot, std::array<double, 4> c, double aa, double ab) const {
    return static_cast<double>(solve_corner_ld(slot, {c[0], c[1], c[2], c[3]}, aa, ab));
}

long double QuadModel::solve_corner_ld(int slot, std::array<long double, 4> c, long double aa,
                                       long double ab) const {
    if (slot < 0 || slot > 3) throw DomainError("quad corner slot out of range");
    auto res = [&](long double t) {
        c[static_cast<size_t>(slot)] = t;
        return quad_residual_t<long double>(family_, delta_, c[0], c[1], c[2], c[3], aa, ab);
    };
    const long double r0 = res(0.0L);
    const long double r1 = res(1.0L);
    const long double coeff = r1 - r0; // residual is affine in each corner
    if (std::abs(coeff) <= 1e-10L * std::max(1.0L, std::abs(r0)))
        throw DomainError(name_ + ": quad equation degenerate in corner " + std::to_string(slot));
    return -r0 / coeff;
}

double QuadModel::octahedron_residual(const forms::CubeFields& f,
                                      const std::array<double, 3>& alpha) const {
    const double ai = alpha[0], aj = alpha[1], ak = alpha[2];
    switch (family_) {
        case QuadFamily::Q1d0:
            return log_ratio((f.xij - f.xi) * (f.xjk - f.xj) * (f.xik - f.xk),
                             (f.xij - f.xj) * (f.xjk - f.xk) * (f.xik - f.xi));
        case QuadFamily::Q1d1:
            return log_ratio(
                (f.xij - f.xi + aj) * (f.xjk - f.xj + ak) * (f.xik - f.xk + ai),
                (f.xij - f.xj + ai) * (f.xjk - f.xk + aj) * (f.xik - f.xi + ak));
        case QuadFamily::Q3d0: {
            const double A2 = std::exp(2 * ai), B2 = std::exp(2 * aj), C2 = std::exp(2 * ak);
            return log_ratio((B2 * f.xij - f.xi) * (C2 * f.xjk - f.xj) * (A2 * f.xik - f.xk),
                             (A2 * f.xij - f.xj) * (B2 * f.xjk - f.xk) * (C2 * f.xik - f.xi));
        }
        case QuadFamily::H1:
            return f.xij * (f.xi - f.xj) + f.xjk * (f.xj - f.xk) + f.xik * (f.xk - f.xi);
        case QuadFamily::H2:
            return f.xij * (f.xi - f.xj + ai - aj) + f.xjk * (f.xj - f.xk + aj - ak) +
                   f.xik * (f.xk - f.xi + ak - ai) + f.xi * (ak - aj) + f.xj * (ai - ak) +
                   f.xk * (aj - ai);
        case QuadFamily::H3:
            return ai * f.xj * f.xij - aj * f.xi * f.xij + aj * f.xk * f.xjk -
                   ak * f.xj * f.xjk + ak * f.xi * f.xik - ai * f.xk * f.xik;
    }
    throw DomainError("bad quad family");
}

void QuadModel::sample_cube(Rng& rng, forms::CubeFields& f,
                            std::array<double, 3>& alpha) const {
    std::vector<double> a, x;
    switch (family_) {
        case QuadFamily::Q1d0:
        case QuadFamily::H1:
        case QuadFamily::H2:
            a = draw_separated(rng, 3, 0.5, 3.0, 0.1);
            x = draw_separated(rng, 4, -2.0, 2.0, 0.15);
            break;
        case QuadFamily::Q1d1:
            a = draw_separated(rng, 3, 0.3, 1.5, 0.1);
            x = draw_separated(rng, 4, -2.0, 2.0, 0.15);
            break;
        case QuadFamily::Q3d0:
            a = draw_separated(rng, 3, 0.2, 1.2, 0.08);
            x = draw_separated(rng, 4, -1.5, 1.5, 0.1);
            for (auto& v : x) v = std::exp(v); // multiplicative field variables
            break;
        case QuadFamily::H3:
            a = draw_separated(rng, 3, 0.5, 2.5, 0.1);
            x = draw_separated(rng, 4, 0.5, 2.5, 0.1);
            break;
    }
    alpha = {a[0], a[1], a[2]};
    f = forms::CubeFields{};
    f.x = x[0];
    f.xi = x[1];
    f.xj = x[2];
    f.xk = x[3];
}

// ----------------------------------------------------------------- lagrangian

LagrangianModel LagrangianModel::by_name(const std::string& name, double gamma) {
    if (name == "q1d0") {
        if (gamma != 0.0) throw DomainError("model q1d0 does not take a gamma parameter");
        return LagrangianModel(LagrangianFamily::Q1d0, name, 0.0);
    }
    if (name == "exp") {
        if (gamma != 0.0)
            throw DomainError("model exp has gamma fixed at 0; use exp-gamma instead");
        return LagrangianModel(LagrangianFamily::Exp, name, 0.0);
    }
    if (name == "exp-gamma") {
        if (gamma < 0.0 || gamma > 0.43)
            throw DomainError("exp-gamma needs gamma in [0, 0.43], got " + std::to_string(gamma));
        return LagrangianModel(LagrangianFamily::Exp, name, gamma);
    }
    throw DomainError("unknown Lagrangian model '" + name + "' (try q1d0, exp, exp-gamma)");
}

const std::vector<std::string>& LagrangianModel::names() {
    static const std::vector<std::string> n{"q1d0", "exp", "exp-gamma"};
    return n;
}

double LagrangianModel::psi(double x, double y, double a) const {
    if (family_ == LagrangianFamily::Q1d0) return a / nonzero(x - y, "psi");
    const double E = std::exp(y - x);
    const double head = a - E;
    if (!(head > 0.0)) throw DomainError("psi: log argument not positive");
    double r = std::log(head);
    if (gamma_ != 0.0) {
        const double tail = 1.0 - gamma_ * a * E;
        if (!(tail > 0.0)) throw DomainError("psi: deformed log argument not positive");
        r -= std::log(tail);
    }
    return r;
}

double LagrangianModel::phi(double x, double y, double a, double b) const {
    if (family_ == LagrangianFamily::Q1d0) return (a - b) / nonzero(x - y, "phi");
    const double E = std::exp(y - x);
    return log_ratio(a - b * E, b - a * E);
}

double LagrangianModel::L(double x, double y, double a) const {
    if (family_ == LagrangianFamily::Q1d0) return a * std::log(std::abs(nonzero(x - y, "L")));
    // antiderivative of the leg along the relative coordinate
    const double u = y - x;
    const double g = gamma_;
    return -solve::antiderivative(
        [a, g](double s) {
            const double E = std::exp(s);
            const double head = a - E;
            if (!(head > 0.0)) throw DomainError("L: log argument not positive on path");
            double v = std::log(head);
            if (g != 0.0) {
                const double tail = 1.0 - g * a * E;
                if (!(tail > 0.0)) throw DomainError("L: deformed log argument not positive");
                v -= std::log(tail);
            }
            return v;
        },
        0.0, u);
}

double LagrangianModel::Lam(double x, double y, double a, double b) const {
    if (family_ == LagrangianFamily::Q1d0)
        return (a - b) * std::log(std::abs(nonzero(x - y, "Lam")));
    if (a == b) return 0.0;
    const double u = y - x;
    // principal real branch: the integrand log|.| - log|.| is odd, which
    // makes Lam(x,y;a,b) = -Lam(y,x;b,a) exact; it vanishes only at the two
    // analytic zeros, which are passed as split points
    const double s1 = std::log(a / b);
    return -solve::antiderivative(
        [a, b](double s) {
            const double E = std::exp(s);
            const double num = a - b * E, den = b - a * E;
            if (num == 0.0 || den == 0.0) throw DomainError("Lam: zero factor on path");
            return std::log(std::abs(num)) - std::log(std::abs(den));
        },
        0.0, u, {s1, -s1});
}

forms::ThreePointLegs LagrangianModel::legs() const {
    const LagrangianModel m = *this;
    return forms::ThreePointLegs{
        [m](double x, double y, double a) { return m.L(x, y, a); },
        [m](double x, double y, double a) { return m.psi(x, y, a); },
        [m](double x, double y, double a) { return -m.psi(x, y, a); }, // L depends on y-x only
        [m](double x, double y, double a, double b) { return m.Lam(x, y, a, b); },
        [m](double x, double y, double a, double b) { return m.phi(x, y, a, b); },
    };
}

forms::ThreePointForm LagrangianModel::form(std::vector<double> alpha_by_dir) const {
    return forms::ThreePointForm(legs(), std::move(alpha_by_dir));
}

double LagrangianModel::corner_residual_closed(const forms::CubeFields& f,
                                               const std::array<double, 3>& alpha,
                                               forms::CubeLabel label) const {
    using forms::CubeLabel;
    const double ai = alpha[0], aj = alpha[1], ak = alpha[2];

    if (label == CubeLabel::X || label == CubeLabel::Xijk) return 0.0;

    if (family_ == LagrangianFamily::Q1d0) {
        // printed rational four-leg sums, normalised to dS/dx_label
        const double xi = f.xi, xj = f.xj, xk = f.xk, xij = f.xij, xjk = f.xjk, xik = f.xik;
        auto leg = [](double a, double d) { return a / nonzero(d, "corner leg"); };
        switch (label) {
            case CubeLabel::Xi:
                return -(leg(aj, xij - xi) - leg(ak, xik - xi) - leg(aj - ai, xj - xi) +
                         leg(ak - ai, xk - xi));
            case CubeLabel::Xj:
                return -(leg(ak, xjk - xj) - leg(ai, xij - xj) - leg(ak - aj, xk - xj) +
                         leg(ai - aj, xi - xj));
            case CubeLabel::Xk:
                return -(leg(ai, xik - xk) - leg(aj, xjk - xk) - leg(ai - ak, xi - xk) +
                         leg(aj - ak, xj - xk));
            case CubeLabel::Xij:
                return leg(aj, xij - xi) - leg(ai, xij - xj) - leg(aj - ak, xij - xik) +
                       leg(ai - ak, xij - xjk);
            case CubeLabel::Xjk:
                return leg(ak, xjk - xj) - leg(aj, xjk - xk) - leg(ak - ai, xjk - xij) +
                       leg(aj - ai, xjk - xik);
            case CubeLabel::Xik:
                return leg(ai, xik - xk) - leg(ak, xik - xi) - leg(ai - aj, xik - xjk) +
                       leg(ak - aj, xik - xij);
            default: break;
        }
        throw DomainError("bad corner label");
    }

    // exponential family: logs of the X-variable four-factor products
    const double g = gamma_;
    const double Xi = std::exp(f.xi), Xj = std::exp(f.xj), Xk = std::exp(f.xk);
    const double Xij = std::exp(f.xij), Xjk = std::exp(f.xjk), Xik = std::exp(f.xik);
    // (a_q X_p - X_pq) / (X_p - gamma a_q X_pq): one-index vs two-index leg
    auto psiR = [g](double Xp, double Xpq, double aq) {
        return log_pos_ratio(aq * Xp - Xpq, Xp - g * aq * Xpq);
    };
    // (a_p X_p - a_q X_q) / (a_q X_p - a_p X_q): like-kind leg
    auto phiR = [](double Xp, double Xq, double ap, double aq) {
        return log_ratio(ap * Xp - aq * Xq, aq * Xp - ap * Xq);
    };
    switch (label) {
        case CubeLabel::Xi:
            return psiR(Xi, Xij, aj) + phiR(Xi, Xj, ai, aj) - psiR(Xi, Xik, ak) -
                   phiR(Xi, Xk, ai, ak);
        case CubeLabel::Xj:
            return psiR(Xj, Xjk, ak) + phiR(Xj, Xk, aj, ak) - psiR(Xj, Xij, ai) -
                   phiR(Xj, Xi, aj, ai);
        case CubeLabel::Xk:
            return psiR(Xk, Xik, ai) + phiR(Xk, Xi, ak, ai) - psiR(Xk, Xjk, aj) -
                   phiR(Xk, Xj, ak, aj);
        case CubeLabel::Xij:
            return -psiR(Xi, Xij, aj) + psiR(Xj, Xij, ai) - phiR(Xij, Xik, aj, ak) +
                   phiR(Xij, Xjk, ai, ak);
        case CubeLabel::Xjk:
            return -psiR(Xj, Xjk, ak) + psiR(Xk, Xjk, aj) - phiR(Xjk, Xij, ak, ai) +
                   phiR(Xjk, Xik, aj, ai);
        case CubeLabel::Xik:
            return -psiR(Xk, Xik, ai) + psiR(Xi, Xik, ak) - phiR(Xik, Xjk, ai, aj) +
                   phiR(Xik, Xij, ak, aj);
        default: break;
    }
    throw DomainError("bad corner label");
}

double LagrangianModel::octahedron_residual(const forms::CubeFields& f,
                                            const std::array<double, 3>& alpha) const {
    const double ai = alpha[0], aj = alpha[1], ak = alpha[2];
    if (family_ == LagrangianFamily::Q1d0)
        return log_ratio((f.xij - f.xi) * (f.xjk - f.xj) * (f.xik - f.xk),
                         (f.xij - f.xj) * (f.xjk - f.xk) * (f.xik - f.xi));

    const double Xi = std::exp(f.xi), Xj = std::exp(f.xj), Xk = std::exp(f.xk);
    const double Xij = std::exp(f.xij), Xjk = std::exp(f.xjk), Xik = std::exp(f.xik);
    if (gamma_ == 0.0)
        return (aj * Xij - ak * Xik) / Xi + (ak * Xjk - ai * Xij) / Xj +
               (ai * Xik - aj * Xjk) / Xk;
    const double g = gamma_;
    return log_pos_ratio(Xi - g * aj * Xij, Xj - g * ai * Xij) +
           log_pos_ratio(Xj - g * ak * Xjk, Xk - g * aj * Xjk) +
           log_pos_ratio(Xk - g * ai * Xik, Xi - g * ak * Xik);
}

LagrangianModel::CubeSample LagrangianModel::sample_cube(Rng& rng) const {
    CubeSample s;
    if (family_ == LagrangianFamily::Q1d0) {
        auto a = draw_separated(rng, 3, 0.5, 3.0, 0.1);
        auto x = draw_separated(rng, 4, -2.0, 2.0, 0.15);
        s.alpha = {a[0], a[1], a[2]};
        s.given[0] = x[0]; // x_i
        s.given[1] = x[1]; // x_j
        s.given[3] = x[2]; // x_ij
        s.given[5] = x[3]; // x_ik
        return s;
    }
    double amax = 3.0;
    if (gamma_ > 0.0) amax = std::min(3.0, std::sqrt(0.99 / gamma_));
    if (amax < 1.55) throw DomainError("gamma too large for the admissible sampling box");
    s.alpha = {rng.uniform(1.5, amax), rng.uniform(1.5, amax), rng.uniform(1.5, amax)};
    // one-index fields mutually separated beyond every phi band (<= log 2);
    // two-index fields likewise, and placed below all one-index fields so
    // that every psi leg argument stays positive
    const double b1 = rng.uniform(-1.0, 1.0);
    const double xi = b1, xj = b1 + (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(0.78, 1.3);
    const double gap = rng.uniform(0.15, 0.5);
    const double top = std::min(xi, xj) - gap;
    const double d = rng.uniform(0.78, 1.3);
    const bool flip = rng.uniform() < 0.5;
    const double xij = flip ? top - d : top;
    const double xik = flip ? top : top - d;
    s.given[0] = xi;
    s.given[1] = xj;
    s.given[3] = xij;
    s.given[5] = xik;
    return s;
}

void LagrangianModel::sample_octa(Rng& rng, forms::CubeFields& f,
                                  std::array<double, 3>& alpha) const {
    f = forms::CubeFields{};
    if (family_ == LagrangianFamily::Q1d0) {
        auto a = draw_separated(rng, 3, 0.5, 3.0, 0.1);
        auto x = draw_separated(rng, 6, -2.0, 2.0, 0.1);
        alpha = {a[0], a[1], a[2]};
        f.xi = x[0];
        f.xj = x[1];
        f.xk = x[2];
        f.xij = x[3];
        f.xjk = x[4];
        f.xik = x[5];
        return;
    }
    double amax = 3.0;
    if (gamma_ > 0.0) amax = std::min(3.0, std::sqrt(0.99 / gamma_));
    if (amax < 1.55) throw DomainError("gamma too large for the admissible sampling box");
    for (int attempt = 0; attempt < 200; ++attempt) {
        alpha = {rng.uniform(1.5, amax), rng.uniform(1.5, amax), rng.uniform(1.5, amax)};
        const double b1 = rng.uniform(-1.0, 1.0);
        auto one = spread_triple(rng, b1, 0.78, 1.3);
        const double span = 2.6 + rng.uniform(0.15, 0.5);
        auto two = spread_triple(rng, b1 - span, 0.78, 1.3);
        f.xi = one[0];
        f.xj = one[1];
        f.xk = one[2];
        f.xij = two[0];
        f.xjk = two[1];
        f.xik = two[2];
        if (admissible_octa(f, alpha)) return;
    }
    throw SolveError("could not sample an admissible octahedron field set");
}

bool LagrangianModel::admissible_octa(const forms::CubeFields& f,
                                      const std::array<double, 3>& alpha, double margin) const {
    const double ai = alpha[0], aj = alpha[1], ak = alpha[2];
    if (family_ == LagrangianFamily::Q1d0) {
        const std::array<std::pair<double, double>, 12> pairs{{{f.xi, f.xj},
                                                               {f.xj, f.xk},
                                                               {f.xk, f.xi},
                                                               {f.xij, f.xjk},
                                                               {f.xjk, f.xik},
                                                               {f.xik, f.xij},
                                                               {f.xi, f.xij},
                                                               {f.xi, f.xik},
                                                               {f.xj, f.xij},
                                                               {f.xj, f.xjk},
                                                               {f.xk, f.xik},
                                                               {f.xk, f.xjk}}};
        for (const auto& [u, v] : pairs)
            if (std::abs(u - v) < margin) return false;
        return true;
    }
    const double Xi = std::exp(f.xi), Xj = std::exp(f.xj), Xk = std::exp(f.xk);
    const double Xij = std::exp(f.xij), Xjk = std::exp(f.xjk), Xik = std::exp(f.xik);
    auto psi_ok = [&](double Xp, double Xpq, double aq) {
        if (!(aq - Xpq / Xp > margin)) return false;
        if (gamma_ > 0.0 && !(1.0 - gamma_ * aq * Xpq / Xp > margin)) return false;
        return true;
    };
    auto phi_ok = [&](double Xp, double Xq, double ap, double aq) {
        const double n = ap * Xp - aq * Xq, d = aq * Xp - ap * Xq;
        const double scale = ap * Xp + aq * Xq;
        return std::abs(n) > margin * scale && std::abs(d) > margin * scale &&
               (n > 0) == (d > 0);
    };
    return psi_ok(Xi, Xij, aj) && psi_ok(Xi, Xik, ak) && psi_ok(Xj, Xjk, ak) &&
           psi_ok(Xj, Xij, ai) && psi_ok(Xk, Xik, ai) && psi_ok(Xk, Xjk, aj) &&
           phi_ok(Xi, Xj, ai, aj) && phi_ok(Xj, Xk, aj, ak) && phi_ok(Xk, Xi, ak, ai) &&
           phi_ok(Xij, Xik, aj, ak) && phi_ok(Xjk, Xij, ak, ai) && phi_ok(Xik, Xjk, ai, aj) &&
           phi_ok(Xij, Xjk, ai, ak) && phi_ok(Xjk, Xik, aj, ai) && phi_ok(Xik, Xij, ak, aj);
}

double LagrangianModel::toda_product(double x, double x_sp, double x_sm, double x_tp,
                                     double x_tm, double x_sp_tm, double x_sm_tp, double a1,
                                     double a2) const {
    if (family_ != LagrangianFamily::Exp || gamma_ != 0.0)
        throw DomainError("the Toda product is defined for the undeformed exponential model");
    const double beta = a1, alpha = a2; // space and time direction parameters
    auto ratio = [](double num, double den) {
        if (den == 0.0) throw DomainError("Toda product: zero denominator");
        return num / den;
    };
    const double lhs = ratio(std::exp(x_tp - x) - alpha, std::exp(x - x_tm) - alpha);
    const double r1 = ratio(std::exp(x_sp - x) - beta, std::exp(x - x_sm) - beta);
    const double r2 = ratio(beta * std::exp(x_sp_tm - x) - alpha,
                            alpha * std::exp(x_sp_tm - x) - beta);
    const double r3 = ratio(alpha * std::exp(x - x_sm_tp) - beta,
                            beta * std::exp(x - x_sm_tp) - alpha);
    if (lhs == 0.0) throw DomainError("Toda product: zero left-hand side");
    return r1 * r2 * r3 / lhs;
}

double rescaled_q3_three_leg(double X, double Xi, double Xik, double Xk, double ai, double ak,
                             double gamma) {
    if (!(gamma > 0.0)) throw DomainError("the three-leg product needs gamma > 0");
    return std::log(gamma) + log_ratio(ak * Xi - Xik, Xi - gamma * ak * Xik) +
           log_ratio(ai * Xi - ak * Xk, ak * Xi - ai * Xk) +
           log_ratio(ai * X - Xi, X - gamma * ai * Xi);
}

double rescaled_q3_residual(double X, double Xi, double Xik, double Xk, double ai, double ak,
                            double gamma) {
    return ak * (1 - gamma * ai * ai) * (X * Xi + gamma * Xk * Xik) -
           ai * (1 - gamma * ak * ak) * (X * Xk + gamma * Xi * Xik) -
           gamma * (ak * ak - ai * ai) * (X * Xik + Xi * Xk);
}

} // namespace plurilag::models
