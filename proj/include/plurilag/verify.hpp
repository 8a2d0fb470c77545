#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plurilag/models.hpp"

namespace plurilag::verify {

struct SuiteOptions {
    long trials = 1000;
    std::uint64_t seed = 42;
    int jobs = 1;

    double tol_residual = 1e-9;  // corner/octahedron residuals on solutions
    double tol_action = 1e-8;    // action-level checks (quadrature-limited)
    double tol_identity = 1e-12; // exact regrouping/decomposition identities
    double tol_spread = 1e-10;   // multi-route propagation disagreement

    int flips = 10;         // flip suite: flips per trial
    double perturb = 0.0;   // closedness suite: leg perturbation (negative control)
};

// Aggregated outcome of one verification suite. Everything except
// runtime_ms is a deterministic function of (suite, model, options.seed,
// options.trials); the job count only changes scheduling, not results.
struct SuiteReport {
    std::string suite;
    std::string model;
    std::map<std::string, double> params;
    long trials = 0;
    std::uint64_t seed = 0;
    long resamples = 0;
    std::map<std::string, double> worst; // check name -> worst |value| observed
    std::vector<std::string> failures;   // per-trial failure descriptions
    double runtime_ms = 0;

    struct TrialRow {
        long trial = 0;
        std::string check;
        double value = 0;
    };
    std::vector<TrialRow> trial_rows; // every recorded |value|, in trial order

    bool passed() const { return failures.empty(); }
    std::string to_json(bool include_runtime = true) const;
    std::string to_csv() const; // long format: one row per (trial, check)
    std::string to_human() const;
};

// Two corner equations determine the cube completion; all six corner
// residuals must vanish and the corner-equation Jacobian must have rank 2.
SuiteReport suite_consistency(const models::LagrangianModel& m, const SuiteOptions& o);

// Corner equations and the octahedron relation cut out the same set: a
// two-corner-equation completion satisfies the octahedron relation, and a
// one-corner-equation + octahedron completion satisfies the remaining five
// corner equations.
SuiteReport suite_octahedron(const models::LagrangianModel& m, const SuiteOptions& o);

// The fused-cube action vanishes on solutions, and agrees across
// independent solutions with the same parameters. options.perturb != 0
// breaks the two-point/three-point leg structure as a negative control.
SuiteReport suite_closedness(const models::LagrangianModel& m, const SuiteOptions& o);

// Quad-equation layer: one-cube propagation closes (three-route agreement),
// the propagated fields satisfy the octahedron relation, and for the
// logarithmic model also the action closure.
SuiteReport suite_quad_layer(const models::QuadModel& m, const SuiteOptions& o);

// Surface flips on a quad solution leave the action invariant; for an
// arbitrary three-point form the action change equals the signed fused-cube
// action exactly (regrouping identity).
SuiteReport suite_flip(const SuiteOptions& o);

// The variation of the action at an interior vertex equals the sum of
// corner contributions of the lifted flower; for the undeformed exponential
// model critical points reproduce the relativistic Toda product.
SuiteReport suite_flower(const models::LagrangianModel& m, const SuiteOptions& o);

// The deformed corner equations and octahedron relation approach their
// undeformed limits linearly in the deformation parameter, reproduce them
// exactly at zero, and the re-scaled multi-affine quad equation matches its
// three-leg form.
SuiteReport suite_gamma(const SuiteOptions& o);

} // namespace plurilag::verify
