#include "plurilag/cube_solve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "plurilag/errors.hpp"

namespace plurilag::solve {

using forms::CubeFields;
using forms::CubeLabel;
using forms::ThreePointLegs;

namespace {

// Mean of the already-known octahedron neighbours of `unknown`; with four
// values given, at least three of its four neighbours are known.
double seed_value(const CubeFields& f, const std::array<bool, 8>& known, CubeLabel unknown) {
    double sum = 0.0;
    int n = 0;
    for (CubeLabel nb : forms::octa_neighbors(unknown)) {
        if (known[static_cast<size_t>(nb)]) {
            sum += f.at(nb);
            ++n;
        }
    }
    if (n == 0)
        throw DomainError("no known neighbour to seed the solve for " +
                          std::string(forms::label_name(unknown)));
    return sum / n;
}

} // namespace

CubeSolution complete_cube(const ThreePointLegs& legs, const std::array<double, 3>& alpha,
                           const std::array<std::optional<double>, 6>& given,
                           const CompleteOptions& opts) {
    CubeSolution sol;
    sol.alpha = alpha;

    std::array<bool, 8> known{};
    std::vector<CubeLabel> unknowns;
    const auto labels = forms::octa_labels();
    for (size_t s = 0; s < labels.size(); ++s) {
        if (given[s]) {
            sol.fields.at(labels[s]) = *given[s];
            known[static_cast<size_t>(labels[s])] = true;
        } else {
            unknowns.push_back(labels[s]);
        }
    }
    if (unknowns.size() != 2)
        throw DomainError("cube completion needs exactly four of the six octahedron fields, got " +
                          std::to_string(6 - unknowns.size()));

    // The corner equation at antipode(V) involves every octahedron field
    // except V, so it pins the other unknown U on its own.
    for (size_t t = 0; t < 2; ++t) {
        const CubeLabel u = unknowns[t];
        const CubeLabel eq = forms::antipode(unknowns[1 - t]);
        const double seed = seed_value(sol.fields, known, u);

        auto residual = [&](double v) {
            CubeFields trial = sol.fields;
            trial.at(u) = v;
            return forms::corner_residual_legs(legs, trial, alpha, eq);
        };
        const auto roots = scan_roots(residual, seed - opts.search_radius,
                                      seed + opts.search_radius, opts.scan_points, opts.root);
        if (roots.empty())
            throw SolveError("no admissible root for " + std::string(forms::label_name(u)) +
                             " in the corner equation at " + forms::label_name(eq));
        const auto nearest =
            std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
                return std::abs(a - seed) < std::abs(b - seed);
            });
        sol.fields.at(u) = *nearest;
        known[static_cast<size_t>(u)] = true;
        sol.solved[t] = u;
        sol.extra_roots += static_cast<int>(roots.size()) - 1;
    }

    sol.max_residual = 0.0;
    for (size_t s = 0; s < labels.size(); ++s) {
        sol.residuals[s] = forms::corner_residual_legs(legs, sol.fields, alpha, labels[s]);
        sol.max_residual = std::max(sol.max_residual, std::abs(sol.residuals[s]));
    }
    if (opts.residual_tol > 0 && sol.max_residual > opts.residual_tol)
        throw SolveError("corner residual " + std::to_string(sol.max_residual) +
                         " exceeds tolerance after completion");
    return sol;
}

} // namespace plurilag::solve
