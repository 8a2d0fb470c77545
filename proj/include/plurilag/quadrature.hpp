#pragma once

#include <functional>
#include <vector>

namespace plurilag::solve {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    int max_intervals = 4000;
};

// Integral of g over [a, b] (a > b allowed, sign flips) by globally adaptive
// Gauss-Kronrod 15(7): worst interval is bisected until the summed error
// estimate drops below abs_tol. Nodes are interior, so integrable endpoint
// singularities (logs) are handled by refinement; interior singular points
// must be supplied through `integrate_split`. Non-finite integrand values
// raise DomainError, convergence failure raises SolveError.
double integrate(const std::function<double(double)>& g, double a, double b,
                 const QuadratureConfig& cfg = {});

// Same, with the interval pre-split at the given points (points outside
// (min(a,b), max(a,b)) are ignored).
double integrate_split(const std::function<double(double)>& g, double a, double b,
                       const std::vector<double>& splits, const QuadratureConfig& cfg = {});

// Antiderivative F(u) = int_{u0}^{u} g(s) ds.
double antiderivative(const std::function<double(double)>& g, double u0, double u,
                      const std::vector<double>& splits = {}, const QuadratureConfig& cfg = {});

} // namespace plurilag::solve
