#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "plurilag/models.hpp"
#include "plurilag/verify.hpp"

using namespace plurilag;
using models::LagrangianModel;
using models::QuadModel;
using verify::SuiteOptions;
using verify::SuiteReport;

namespace {
SuiteOptions small(long trials, std::uint64_t seed = 7) {
    SuiteOptions o;
    o.trials = trials;
    o.seed = seed;
    return o;
}

void report_is_clean(const SuiteReport& rep, long trials) {
    CAPTURE(rep.to_human());
    CHECK(rep.passed());
    CHECK(rep.trials == trials);
    CHECK(rep.failures.empty());
}
} // namespace

TEST_CASE("consistency suite passes for the three-point catalog") {
    for (const auto& entry : std::vector<std::pair<std::string, double>>{
             {"q1d0", 0.0}, {"exp", 0.0}, {"exp-gamma", 0.1}}) {
        auto m = LagrangianModel::by_name(entry.first, entry.second);
        const auto rep = verify::suite_consistency(m, small(40));
        report_is_clean(rep, 40);
        CHECK(rep.worst.at("corner_residual") < 1e-9);
        CHECK(rep.worst.at("rank_deviation") == 0.0);
    }
}

TEST_CASE("octahedron suite passes in both directions") {
    for (const auto& entry : std::vector<std::pair<std::string, double>>{
             {"q1d0", 0.0}, {"exp", 0.0}, {"exp-gamma", 0.1}}) {
        auto m = LagrangianModel::by_name(entry.first, entry.second);
        const auto rep = verify::suite_octahedron(m, small(30));
        report_is_clean(rep, 30);
        CHECK(rep.worst.at("octahedron_from_corners") < 1e-9);
        CHECK(rep.worst.at("corners_from_octahedron") < 1e-9);
    }
}

TEST_CASE("closedness suite passes on solutions") {
    for (const auto& entry :
         std::vector<std::pair<std::string, double>>{{"q1d0", 0.0}, {"exp", 0.0}}) {
        auto m = LagrangianModel::by_name(entry.first, entry.second);
        const auto rep = verify::suite_closedness(m, small(20));
        report_is_clean(rep, 20);
        CHECK(rep.worst.at("fused_action") < 1e-8);
        CHECK(rep.worst.at("cross_solution_spread") < 1e-8);
    }
}

TEST_CASE("closedness suite rejects a broken pair potential") {
    auto m = LagrangianModel::by_name("q1d0");
    auto o = small(10);
    o.perturb = 1e-3;
    const auto rep = verify::suite_closedness(m, o);
    CHECK_FALSE(rep.passed());
    // breaking the pair potential destroys consistency and closedness at once:
    // the two solved corner equations no longer imply the other four, and the
    // fused-cube action no longer vanishes
    CHECK(rep.worst.at("corner_residual") > 1e-9);
    CHECK(rep.worst.at("fused_action") > 1e-8);
}

TEST_CASE("quad layer suite passes for every quad model") {
    for (const auto& name : QuadModel::names()) {
        auto m = QuadModel::by_name(name, name == "h3" ? 1.0 : 0.0);
        const auto rep = verify::suite_quad_layer(m, small(30));
        report_is_clean(rep, 30);
        CHECK(rep.worst.at("route_spread") < 1e-10);
        CHECK(rep.worst.at("octahedron") < 1e-9);
        if (name == "q1d0") CHECK(rep.worst.at("fused_action") < 1e-8);
    }
}

TEST_CASE("flip suite keeps the action invariant on solutions") {
    auto o = small(2);
    o.flips = 6;
    const auto rep = verify::suite_flip(o);
    report_is_clean(rep, 2);
    CHECK(rep.worst.at("flip_action_change") < 1e-8);
    CHECK(rep.worst.at("regrouping") < 1e-12);
    CHECK(rep.worst.at("regrouping_generic") < 1e-12);
}

TEST_CASE("flower suite decomposes the vertex variation") {
    for (const auto& entry : std::vector<std::pair<std::string, double>>{
             {"q1d0", 0.0}, {"exp", 0.0}, {"exp-gamma", 0.15}}) {
        auto m = LagrangianModel::by_name(entry.first, entry.second);
        const auto rep = verify::suite_flower(m, small(15));
        report_is_clean(rep, 15);
        CHECK(rep.worst.at("flower_decomposition") < 1e-12);
        if (entry.first == "exp") CHECK(rep.worst.at("toda_product") < 1e-9);
    }
    CHECK_THROWS_AS(
        verify::suite_flower(LagrangianModel::by_name("exp-gamma", 0.42), small(2)),
        DomainError);
}

TEST_CASE("gamma suite confirms the deformation limit") {
    const auto rep = verify::suite_gamma(small(25));
    report_is_clean(rep, 25);
    CHECK(rep.worst.at("corner_ratio_violation") == 0.0);
    CHECK(rep.worst.at("octahedron_ratio_violation") == 0.0);
    CHECK(rep.worst.at("undeformed_exact") == 0.0);
    CHECK(rep.worst.at("octahedron_exact") == 0.0);
    CHECK(rep.worst.at("rescaled_q3") < 1e-9);
    // the ladder actually exercises a linear limit: ratios sit near ten
    CHECK(rep.worst.at("corner_ratio") > 2.0);
    CHECK(rep.worst.at("corner_ratio") < 200.0);
}

TEST_CASE("reports are byte-identical across runs and job counts") {
    auto m = LagrangianModel::by_name("exp");
    auto o1 = small(16, 99);
    auto o2 = o1;
    o2.jobs = 3;
    const auto a = verify::suite_consistency(m, o1);
    const auto b = verify::suite_consistency(m, o1);
    const auto c = verify::suite_consistency(m, o2);
    CHECK(a.to_json(false) == b.to_json(false));
    CHECK(a.to_json(false) == c.to_json(false));

    auto o3 = small(16, 100);
    const auto d = verify::suite_consistency(m, o3);
    CHECK(a.to_json(false) != d.to_json(false));
}

TEST_CASE("report serialization carries the suite outcome") {
    auto m = LagrangianModel::by_name("q1d0");
    const auto rep = verify::suite_consistency(m, small(5));
    const auto js = rep.to_json();
    CHECK(js.find("\"suite\": \"consistency\"") != std::string::npos);
    CHECK(js.find("\"passed\": true") != std::string::npos);
    CHECK(js.find("runtime_ms") != std::string::npos);
    CHECK(rep.to_json(false).find("runtime_ms") == std::string::npos);

    const auto csv = rep.to_csv();
    CHECK(csv.rfind("suite,model,trial,check,value\n", 0) == 0);
    CHECK(csv.find("consistency,q1d0,0,corner_residual,") != std::string::npos);
    CHECK(csv.find("consistency,q1d0,4,rank_deviation,") != std::string::npos);
    // one data row per (trial, check) pair
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 5 * 3);

    CHECK(rep.to_human().find("result PASS") != std::string::npos);
}
