#pragma once

#include <Eigen/Dense>
#include <functional>

#include "plurilag/fields.hpp"

namespace plurilag::solve {

// Rank by singular-value count: sigma > tau_rel * sigma_max. Zero matrices
// have rank 0; non-finite entries raise DomainError.
int numeric_rank(const Eigen::MatrixXd& m, double tau_rel = 1e-7);

// 6x6 Jacobian of the six corner residuals (octahedron-label order) with
// respect to the six octahedron fields, by central differences with step
// h * max(1, |field|).
Eigen::MatrixXd
corner_jacobian(const std::function<double(const forms::CubeFields&, forms::CubeLabel)>& residual,
                const forms::CubeFields& at, double h = 1e-6);

} // namespace plurilag::solve
