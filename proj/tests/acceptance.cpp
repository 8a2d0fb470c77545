// Acceptance harness: runs every verification suite at full scale and prints
// one PASS/FAIL line per criterion, with the worst observed values and the
// measured runtime against its budget. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "plurilag/models.hpp"
#include "plurilag/verify.hpp"

using namespace plurilag;
using models::LagrangianModel;
using models::QuadModel;
using verify::SuiteOptions;
using verify::SuiteReport;

namespace {

int g_failures = 0;

int jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 4u));
}

SuiteOptions options(long trials, std::uint64_t seed) {
    SuiteOptions o;
    o.trials = trials;
    o.seed = seed;
    o.jobs = jobs();
    return o;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

double worst(const SuiteReport& rep, const std::string& check) {
    const auto it = rep.worst.find(check);
    return it == rep.worst.end() ? 0.0 : it->second;
}

void report(int n, const std::string& name, bool ok, double seconds, double budget,
            const std::string& detail) {
    if (!ok) ++g_failures;
    std::printf("[%s] criterion %d: %s — %s (%.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL", n,
                name.c_str(), detail.c_str(), seconds, budget);
}

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

void criterion_consistency() {
    Timer timer;
    bool ok = true;
    double worst_residual = 0, worst_rank = 0;
    for (const auto& [name, gamma] :
         std::vector<std::pair<std::string, double>>{{"q1d0", 0.0}, {"exp", 0.0},
                                                     {"exp-gamma", 0.1}}) {
        const auto rep =
            verify::suite_consistency(LagrangianModel::by_name(name, gamma), options(1000, 42));
        ok = ok && rep.passed();
        worst_residual = std::max(worst_residual, worst(rep, "corner_residual"));
        worst_rank = std::max(worst_rank, worst(rep, "rank_deviation"));
    }
    const double s = timer.seconds();
    ok = ok && worst_residual < 1e-9 && worst_rank == 0.0 && s < 10.0;
    report(1, "corner-equation consistency (q1d0, exp, exp-gamma; 1000 trials each)", ok, s, 10,
           "worst unused-corner residual " + fmt(worst_residual) + ", rank deviations " +
               fmt(worst_rank));
}

void criterion_octahedron() {
    Timer timer;
    bool ok = true;
    double worst_fwd = 0, worst_back = 0;
    for (const auto& [name, gamma] :
         std::vector<std::pair<std::string, double>>{{"q1d0", 0.0}, {"exp", 0.0},
                                                     {"exp-gamma", 0.1}}) {
        const auto rep =
            verify::suite_octahedron(LagrangianModel::by_name(name, gamma), options(1000, 42));
        ok = ok && rep.passed();
        worst_fwd = std::max(worst_fwd, worst(rep, "octahedron_from_corners"));
        worst_back = std::max(worst_back, worst(rep, "corners_from_octahedron"));
    }
    const double s = timer.seconds();
    ok = ok && worst_fwd < 1e-9 && worst_back < 1e-9 && s < 10.0;
    report(2, "octahedron equivalence in both directions (1000 trials per model)", ok, s, 10,
           "corners=>octahedron " + fmt(worst_fwd) + ", octahedron=>corners " + fmt(worst_back));
}

void criterion_closedness() {
    Timer timer;
    bool ok = true;
    double worst_action = 0, worst_spread = 0;
    for (const std::string name : {"q1d0", "exp"}) {
        const auto rep =
            verify::suite_closedness(LagrangianModel::by_name(name), options(500, 42));
        ok = ok && rep.passed();
        worst_action = std::max(worst_action, worst(rep, "fused_action"));
        worst_spread = std::max(worst_spread, worst(rep, "cross_solution_spread"));
    }
    // negative control: a cubic perturbation of the pair potential must fail
    auto control_opts = options(50, 42);
    control_opts.perturb = 1e-3;
    const auto control =
        verify::suite_closedness(LagrangianModel::by_name("q1d0"), control_opts);
    const double s = timer.seconds();
    ok = ok && worst_action < 1e-8 && worst_spread < 1e-8 && !control.passed() && s < 30.0;
    report(3, "fused-cube action vanishes on solutions (q1d0, exp; 500 solutions each)", ok, s,
           30,
           "worst |S| " + fmt(worst_action) + ", cross-solution spread " + fmt(worst_spread) +
               ", 1e-3-perturbed control " + (control.passed() ? "PASSED (bad)" : "fails"));
}

void criterion_quad_layer() {
    Timer timer;
    bool ok = true;
    double worst_spread = 0, worst_octa = 0, worst_closure = 0;
    for (const std::string name : {"q1d0", "q1d1", "q3d0", "h1", "h2", "h3"}) {
        const auto model = QuadModel::by_name(name, name == "h3" ? 1.0 : 0.0);
        const auto rep = verify::suite_quad_layer(model, options(1000, 42));
        ok = ok && rep.passed();
        worst_spread = std::max(worst_spread, worst(rep, "route_spread"));
        worst_octa = std::max(worst_octa, worst(rep, "octahedron"));
        if (name == "q1d0") worst_closure = worst(rep, "fused_action");
    }
    const double s = timer.seconds();
    ok = ok && worst_spread < 1e-10 && worst_octa < 1e-9 && worst_closure < 1e-8 && s < 10.0;
    report(4, "quad-equation layer for all six models (1000 propagation trials each)", ok, s, 10,
           "route spread " + fmt(worst_spread) + ", octahedron " + fmt(worst_octa) +
               ", q1d0 closure " + fmt(worst_closure));
}

void criterion_flip() {
    Timer timer;
    auto o = options(5, 42);
    o.flips = 10;
    const auto rep = verify::suite_flip(o);
    const double s = timer.seconds();
    const bool ok = rep.passed() && worst(rep, "flip_action_change") < 1e-8 &&
                    worst(rep, "regrouping") < 1e-12 &&
                    worst(rep, "regrouping_generic") < 1e-12 && s < 5.0;
    report(5, "flip invariance on 3x3x3 solutions (10 flips per trial, 5 trials)", ok, s, 5,
           "|dS| " + fmt(worst(rep, "flip_action_change")) + ", regrouping identity " +
               fmt(std::max(worst(rep, "regrouping"), worst(rep, "regrouping_generic"))));
}

void criterion_flower() {
    Timer timer;
    const auto rep_log =
        verify::suite_flower(LagrangianModel::by_name("q1d0"), options(1000, 42));
    const auto rep_exp = verify::suite_flower(LagrangianModel::by_name("exp"), options(1000, 42));
    const double s = timer.seconds();
    const double decomposition = std::max(worst(rep_log, "flower_decomposition"),
                                          worst(rep_exp, "flower_decomposition"));
    const double toda = worst(rep_exp, "toda_product");
    const bool ok = rep_log.passed() && rep_exp.passed() && decomposition < 1e-12 &&
                    toda < 1e-9 && s < 5.0;
    report(6, "variation decomposes into lifted corner residuals (1000 field sets per model)",
           ok, s, 5, "decomposition " + fmt(decomposition) + ", Toda product deviation " +
                         fmt(toda));
}

void criterion_gamma() {
    Timer timer;
    const auto rep = verify::suite_gamma(options(500, 42));
    const double s = timer.seconds();
    const bool ok = rep.passed() && worst(rep, "corner_ratio_violation") == 0.0 &&
                    worst(rep, "octahedron_ratio_violation") == 0.0 &&
                    worst(rep, "undeformed_exact") == 0.0 &&
                    worst(rep, "octahedron_exact") == 0.0 &&
                    worst(rep, "rescaled_q3") < 1e-9 && s < 5.0;
    report(7, "deformation-limit ladder and exact gamma=0 (500 trials)", ok, s, 5,
           "ratio window violations " +
               fmt(worst(rep, "corner_ratio_violation") +
                   worst(rep, "octahedron_ratio_violation")) +
               ", gamma=0 deviation " +
               fmt(worst(rep, "undeformed_exact") + worst(rep, "octahedron_exact")) +
               ", rescaled quad " + fmt(worst(rep, "rescaled_q3")));
}

void criterion_determinism() {
    Timer timer;
    bool ok = true;
    std::string first_mismatch;

    auto same = [&](const std::string& label, const SuiteReport& a, const SuiteReport& b) {
        if (a.to_json(false) != b.to_json(false)) {
            ok = false;
            if (first_mismatch.empty()) first_mismatch = label;
        }
    };

    auto opts = [&](int jobs_count) {
        auto o = options(10, 1234);
        o.jobs = jobs_count;
        return o;
    };

    const auto q1d0 = LagrangianModel::by_name("q1d0");
    const auto expg = LagrangianModel::by_name("exp-gamma", 0.1);
    const auto h3 = QuadModel::by_name("h3", 1.0);

    same("consistency", verify::suite_consistency(expg, opts(1)),
         verify::suite_consistency(expg, opts(3)));
    same("octahedron", verify::suite_octahedron(q1d0, opts(1)),
         verify::suite_octahedron(q1d0, opts(3)));
    same("closedness", verify::suite_closedness(q1d0, opts(1)),
         verify::suite_closedness(q1d0, opts(3)));
    same("quad_layer", verify::suite_quad_layer(h3, opts(1)),
         verify::suite_quad_layer(h3, opts(3)));
    {
        auto a = opts(1), b = opts(3);
        a.trials = b.trials = 2;
        a.flips = b.flips = 4;
        same("flip", verify::suite_flip(a), verify::suite_flip(b));
    }
    same("flower", verify::suite_flower(q1d0, opts(1)), verify::suite_flower(q1d0, opts(3)));
    same("gamma", verify::suite_gamma(opts(1)), verify::suite_gamma(opts(3)));

    // and a strict rerun with identical options must agree byte for byte
    same("rerun", verify::suite_consistency(q1d0, opts(2)),
         verify::suite_consistency(q1d0, opts(2)));

    const double s = timer.seconds();
    report(8, "reports are byte-identical across reruns and job counts", ok, s, 60,
           ok ? "all seven suites match with jobs 1 vs 3" : "mismatch in " + first_mismatch);
}

} // namespace

int main() {
    criterion_consistency();
    criterion_octahedron();
    criterion_closedness();
    criterion_quad_layer();
    criterion_flip();
    criterion_flower();
    criterion_gamma();
    criterion_determinism();

    if (g_failures == 0) {
        std::printf("acceptance: all 8 criteria PASS\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}
