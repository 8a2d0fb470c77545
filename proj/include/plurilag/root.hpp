#pragma once

#include <functional>
#include <vector>

namespace plurilag::solve {

struct RootConfig {
    double abs_tol = 1e-12; // on |f(root)|
    int max_iter = 80;
};

struct RootResult {
    double x = 0;
    double residual = 0;
    int iters = 0;
};

// Bracketed hybrid secant/bisection root of f on [lo, hi]. When `expand` is
// set and the seed interval does not bracket a sign change, the interval is
// grown geometrically (inadmissible points, signalled by DomainError from f,
// act as hard walls). Throws SolveError when no bracket exists, on the
// iteration cap, or when the bracket collapses onto a discontinuity.
RootResult root_1d(const std::function<double(double)>& f, double lo, double hi,
                   const RootConfig& cfg = {}, bool expand = true);

// All roots of f in [lo, hi] located by an n-interval uniform scan plus
// bracketed polish. Subintervals where f is inadmissible are skipped; sign
// changes across poles are rejected by the residual criterion.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               int n, const RootConfig& cfg = {});

} // namespace plurilag::solve
