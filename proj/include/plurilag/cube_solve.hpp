#pragma once

#include <array>
#include <optional>

#include "plurilag/fields.hpp"
#include "plurilag/root.hpp"
#include "plurilag/two_form.hpp"

namespace plurilag::solve {

struct CompleteOptions {
    RootConfig root;
    double residual_tol = 1e-9; // <= 0 skips the final residual check
    double search_radius = 8.0; // scan half-width around the seed value
    int scan_points = 481;
};

struct CubeSolution {
    forms::CubeFields fields;            // six octahedron values; x, x_ijk untouched
    std::array<double, 3> alpha{};
    std::array<double, 6> residuals{};   // octahedron-label order
    double max_residual = 0.0;
    std::array<forms::CubeLabel, 2> solved{}; // the two completed labels
    int extra_roots = 0; // additional admissible roots in the scan windows
};

// Complete four given octahedron fields to all six. The corner equation at
// a label involves every octahedron field except the label's antipode, so
// each unknown U is determined by the single-unknown equation at
// antipode(V), V being the other unknown. Among multiple admissible roots
// the one nearest the mean of U's known octahedron neighbours is taken.
// Throws DomainError for bad given patterns or inadmissible data, and
// SolveError when no root exists or the residual check fails.
CubeSolution complete_cube(const forms::ThreePointLegs& legs, const std::array<double, 3>& alpha,
                           const std::array<std::optional<double>, 6>& given,
                           const CompleteOptions& opts = {});

} // namespace plurilag::solve
