#include "plurilag/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "plurilag/errors.hpp"

namespace plurilag::solve {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Cell {
    double a, b;
    double value;
    double err;
};

Cell gk15(const std::function<double(double)>& g, double a, double b) {
    const double hw = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    auto eval = [&](double t) {
        double v = g(t);
        if (!std::isfinite(v))
            throw DomainError("integrand is not finite at s = " + std::to_string(t));
        return v;
    };
    const double fc = eval(c);
    double kron = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = hw * xgk[i];
        const double f1 = eval(c - dx);
        const double f2 = eval(c + dx);
        kron += wgk[i] * (f1 + f2);
        if (i % 2 == 1) gauss += wg[(i - 1) / 2] * (f1 + f2);
    }
    return Cell{a, b, kron * hw, std::abs((kron - gauss) * hw)};
}

} // namespace

double integrate(const std::function<double(double)>& g, double a, double b,
                 const QuadratureConfig& cfg) {
    if (a == b) return 0.0;
    if (a > b) return -integrate(g, b, a, cfg);

    auto worse = [](const Cell& l, const Cell& r) { return l.err < r.err; };
    std::priority_queue<Cell, std::vector<Cell>, decltype(worse)> cells(worse);
    cells.push(gk15(g, a, b));
    double total_err = cells.top().err;

    while (total_err > cfg.abs_tol && static_cast<int>(cells.size()) < cfg.max_intervals) {
        Cell worst = cells.top();
        cells.pop();
        total_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) { // interval at rounding limit
            cells.push(worst);
            total_err += worst.err;
            break;
        }
        Cell left = gk15(g, worst.a, mid);
        Cell right = gk15(g, mid, worst.b);
        total_err += left.err + right.err;
        cells.push(left);
        cells.push(right);
    }

    if (total_err > 1e3 * cfg.abs_tol)
        throw SolveError("quadrature did not converge: error estimate " +
                         std::to_string(total_err));

    double sum = 0;
    while (!cells.empty()) {
        sum += cells.top().value;
        cells.pop();
    }
    return sum;
}

double integrate_split(const std::function<double(double)>& g, double a, double b,
                       const std::vector<double>& splits, const QuadratureConfig& cfg) {
    if (a == b) return 0.0;
    if (a > b) return -integrate_split(g, b, a, splits, cfg);

    std::vector<double> pts{a};
    for (double s : splits)
        if (s > a && s < b) pts.push_back(s);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    QuadratureConfig piece = cfg;
    piece.abs_tol = cfg.abs_tol / static_cast<double>(pts.size() - 1);
    double sum = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) sum += integrate(g, pts[i], pts[i + 1], piece);
    return sum;
}

double antiderivative(const std::function<double(double)>& g, double u0, double u,
                      const std::vector<double>& splits, const QuadratureConfig& cfg) {
    return integrate_split(g, u0, u, splits, cfg);
}

} // namespace plurilag::solve
