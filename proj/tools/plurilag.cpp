// plurilag: verification suites, box propagation, and surface actions for
// discrete pluri-Lagrangian lattice models.
//
// Exit codes: 0 success, 1 usage or domain error, 2 verification failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "plurilag/errors.hpp"
#include "plurilag/io.hpp"
#include "plurilag/models.hpp"
#include "plurilag/propagate.hpp"
#include "plurilag/rng.hpp"
#include "plurilag/surface.hpp"
#include "plurilag/two_form.hpp"
#include "plurilag/verify.hpp"

namespace {

using namespace plurilag;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

void emit(std::string text, const std::string& out_path) {
    if (!text.empty() && text.back() != '\n') text += '\n';
    if (out_path.empty())
        std::cout << text;
    else
        io::write_text(out_path, text);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& cli_seed) {
    if (cli_seed) return *cli_seed;
    if (const char* env = std::getenv("PLURILAG_SEED")) {
        const std::string s(env);
        try {
            size_t pos = 0;
            const unsigned long long v = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw DomainError("PLURILAG_SEED must be a 64-bit unsigned integer, got \"" + s +
                              "\"");
        }
    }
    return 42;
}

double parse_tol_value(const std::string& text) {
    double v = 0;
    try {
        size_t pos = 0;
        v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw DomainError("--tol: cannot parse \"" + text + "\" as a number");
    }
    if (!(v > 0.0)) throw DomainError("--tol: tolerance must be positive, got " + text);
    return v;
}

// --tol accepts "key=value" with key in {residual, action, identity, spread}
// or a bare number, which overrides the residual tolerance.
void apply_tolerances(const std::vector<std::string>& tols, verify::SuiteOptions& o) {
    for (const auto& t : tols) {
        std::string key = "residual";
        std::string val = t;
        if (const auto eq = t.find('='); eq != std::string::npos) {
            key = t.substr(0, eq);
            val = t.substr(eq + 1);
        }
        const double v = parse_tol_value(val);
        if (key == "residual")
            o.tol_residual = v;
        else if (key == "action")
            o.tol_action = v;
        else if (key == "identity")
            o.tol_identity = v;
        else if (key == "spread")
            o.tol_spread = v;
        else
            throw DomainError("--tol: unknown tolerance \"" + key +
                              "\" (expected residual, action, identity, or spread)");
    }
}

std::string render_report(const verify::SuiteReport& rep, const std::string& format) {
    if (format == "json") return rep.to_json();
    if (format == "csv") return rep.to_csv();
    return rep.to_human();
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    std::string suite;
    std::string model;
    double gamma = 0.0;
    double delta = 0.0;
    std::optional<long> trials;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    int flips = 10;
    double perturb = 0.0;
    std::vector<std::string> tol;
    std::string format = "human";
    std::string out;
};

int run_verify(const VerifyArgs& a) {
    static const std::map<std::string, long> default_trials = {
        {"consistency", 1000}, {"octahedron", 1000}, {"closedness", 500}, {"quad", 1000},
        {"flip", 10},          {"flower", 1000},     {"gamma", 200}};
    const auto suite_it = default_trials.find(a.suite);
    if (suite_it == default_trials.end()) throw DomainError("unknown suite '" + a.suite + "'");

    verify::SuiteOptions o;
    o.trials = a.trials.value_or(suite_it->second);
    if (o.trials < 1) throw DomainError("--trials must be at least 1");
    o.seed = resolve_seed(a.seed);
    o.jobs = a.jobs;
    o.flips = a.flips;
    o.perturb = a.perturb;
    apply_tolerances(a.tol, o);

    verify::SuiteReport rep;
    if (a.suite == "consistency" || a.suite == "octahedron" || a.suite == "closedness" ||
        a.suite == "flower") {
        const auto m =
            models::LagrangianModel::by_name(a.model.empty() ? "q1d0" : a.model, a.gamma);
        if (a.suite == "consistency")
            rep = verify::suite_consistency(m, o);
        else if (a.suite == "octahedron")
            rep = verify::suite_octahedron(m, o);
        else if (a.suite == "closedness")
            rep = verify::suite_closedness(m, o);
        else
            rep = verify::suite_flower(m, o);
    } else if (a.suite == "quad") {
        const auto m = models::QuadModel::by_name(a.model.empty() ? "q1d0" : a.model, a.delta);
        rep = verify::suite_quad_layer(m, o);
    } else if (a.suite == "flip") {
        if (!a.model.empty() && a.model != "q1d0")
            throw DomainError("the flip suite runs on the q1d0 model only");
        rep = verify::suite_flip(o);
    } else { // gamma
        if (!a.model.empty() && a.model != "exp-gamma")
            throw DomainError("the gamma suite runs on the exp-gamma model only");
        rep = verify::suite_gamma(o);
    }

    emit(render_report(rep, a.format), a.out);
    return rep.passed() ? kOk : kFailed;
}

// --------------------------------------------------------------- propagate

struct PropagateArgs {
    std::string model;
    double delta = 0.0;
    std::vector<int> box = {4, 4, 4};
    std::vector<double> alpha = {1.0, 2.0, 3.0};
    std::optional<std::uint64_t> seed;
    std::string data;
    std::vector<std::string> tol;
    std::string format = "human";
    std::string out;
};

int run_propagate(const PropagateArgs& a) {
    if (a.box.size() != 3) throw DomainError("--box needs three extents, e.g. --box 4,4,4");
    for (int n : a.box)
        if (n < 1) throw DomainError("--box extents must be at least 1");
    if (a.alpha.size() != 3) throw DomainError("--alpha needs three entries for propagation");

    double tol_spread = 1e-10;
    for (const auto& t : a.tol) {
        std::string key = "spread";
        std::string val = t;
        if (const auto eq = t.find('='); eq != std::string::npos) {
            key = t.substr(0, eq);
            val = t.substr(eq + 1);
        }
        if (key != "spread")
            throw DomainError("--tol: propagation only has a spread tolerance");
        tol_spread = parse_tol_value(val);
    }

    const auto m = models::QuadModel::by_name(a.model, a.delta);
    const std::array<int, 3> box = {a.box[0], a.box[1], a.box[2]};
    const std::array<double, 3> alpha = {a.alpha[0], a.alpha[1], a.alpha[2]};

    forms::FieldMap axes(3);
    std::optional<std::uint64_t> used_seed;
    if (!a.data.empty()) {
        axes = io::load_fields(a.data);
        if (axes.dim() != 3)
            throw ParseError(a.data + ": axis data must have m = 3, got m = " +
                             std::to_string(axes.dim()));
    } else {
        used_seed = resolve_seed(a.seed);
        Rng rng(*used_seed);
        axes = solve::sample_axes(m, box, rng);
    }

    solve::BoxResult res;
    try {
        res = solve::propagate_box(m, box, axes, alpha);
    } catch (const DomainError& e) {
        std::cerr << "propagation failed: " << e.what() << "\n";
        return kFailed;
    } catch (const SolveError& e) {
        std::cerr << "propagation failed: " << e.what() << "\n";
        return kFailed;
    }

    std::string text;
    if (a.format == "json") {
        json j;
        j["alpha"] = a.alpha;
        j["box"] = a.box;
        j["completions"] = res.completions;
        j["delta"] = m.delta();
        j["fields"] = json::parse(io::fields_to_json(res.fields));
        j["max_spread"] = res.max_spread;
        j["model"] = m.name();
        if (used_seed) j["seed"] = *used_seed;
        j["spread_tol"] = tol_spread;
        text = j.dump(2);
    } else if (a.format == "csv") {
        const json fj = json::parse(io::fields_to_json(res.fields));
        text = "i,j,k,value\n";
        for (const auto& entry : fj["values"]) {
            const auto& at = entry["at"];
            text += std::to_string(at[0].get<int>()) + "," + std::to_string(at[1].get<int>()) +
                    "," + std::to_string(at[2].get<int>()) + "," +
                    fmt(entry["value"].get<double>()) + "\n";
        }
    } else {
        text = "model " + m.name() + "  box " + std::to_string(a.box[0]) + "," +
               std::to_string(a.box[1]) + "," + std::to_string(a.box[2]) + "  alpha " +
               fmt(alpha[0]) + "," + fmt(alpha[1]) + "," + fmt(alpha[2]) + "\n";
        if (used_seed) text += "seed " + std::to_string(*used_seed) + "\n";
        text += "vertices " + std::to_string(res.fields.size()) + "  multi-route completions " +
                std::to_string(res.completions) + "\n";
        text += "max route spread = " + fmt(res.max_spread) + "  (tolerance " + fmt(tol_spread) +
                ")\n";
        const json fj = json::parse(io::fields_to_json(res.fields));
        for (const auto& entry : fj["values"]) {
            const auto& at = entry["at"];
            text += "  (" + std::to_string(at[0].get<int>()) + "," +
                    std::to_string(at[1].get<int>()) + "," + std::to_string(at[2].get<int>()) +
                    ") = " + fmt(entry["value"].get<double>()) + "\n";
        }
        text += res.max_spread <= tol_spread ? "result OK\n" : "result SPREAD EXCEEDED\n";
    }
    emit(text, a.out);
    return res.max_spread <= tol_spread ? kOk : kFailed;
}

// ------------------------------------------------------------------ action

struct ActionArgs {
    std::string surface;
    std::string fields;
    std::string model = "q1d0";
    double gamma = 0.0;
    std::vector<double> alpha = {1.0, 2.0, 3.0};
    int flips = 0;
    std::optional<std::uint64_t> seed;
    std::string format = "human";
    std::string out;
};

forms::ThreePointLegs zero_legs() {
    auto z3 = [](double, double, double) { return 0.0; };
    auto z4 = [](double, double, double, double) { return 0.0; };
    return forms::ThreePointLegs{z3, z3, z3, z4, z4};
}

int run_action(const ActionArgs& a) {
    const auto surf = io::load_surface(a.surface);
    const auto fm = io::load_fields(a.fields);
    if (fm.dim() != surf.dim())
        throw ParseError(a.fields + ": field dimension m = " + std::to_string(fm.dim()) +
                         " does not match surface dimension m = " + std::to_string(surf.dim()));
    if (static_cast<int>(a.alpha.size()) < surf.dim())
        throw DomainError("--alpha needs at least m = " + std::to_string(surf.dim()) +
                          " entries for this surface");

    const forms::ThreePointLegs legs =
        a.model == "zero" ? zero_legs() : models::LagrangianModel::by_name(a.model, a.gamma).legs();
    const forms::ThreePointForm form(legs, a.alpha);

    const double initial = forms::action(surf, fm, form);

    struct FlipRecord {
        lattice::MultiIndex removed, added;
        int sign = 0;
        double delta = 0;
    };
    std::vector<FlipRecord> flips;
    lattice::QuadSurface cur = surf;
    double cur_action = initial;
    if (a.flips > 0) {
        Rng rng(resolve_seed(a.seed));
        for (int k = 0; k < a.flips; ++k) {
            std::vector<lattice::OrientedCube> usable;
            for (const auto& c : lattice::candidate_cubes(cur)) {
                if (!lattice::flippable(cur, c)) continue;
                bool supported = true;
                for (const auto& v : lattice::cube_vertices(c))
                    if (!fm.contains(v)) supported = false;
                if (supported) usable.push_back(c);
            }
            if (usable.empty()) break; // no fully field-supported flip remains
            const auto& cube = usable[static_cast<size_t>(
                rng.uniform_int(0, static_cast<int>(usable.size()) - 1))];
            auto fl = lattice::flip(cur, cube);
            const double after = forms::action(fl.surface, fm, form);
            flips.push_back({fl.removed_apex, fl.added_apex, fl.sign, after - cur_action});
            cur = std::move(fl.surface);
            cur_action = after;
        }
    }

    std::string text;
    if (a.format == "json") {
        json j;
        j["action"] = initial;
        j["alpha"] = a.alpha;
        j["final_action"] = cur_action;
        j["flips"] = json::array();
        for (const auto& f : flips) {
            json e;
            e["added"] = f.added.coords();
            e["delta"] = f.delta;
            e["removed"] = f.removed.coords();
            e["sign"] = f.sign;
            j["flips"].push_back(std::move(e));
        }
        j["model"] = a.model;
        text = j.dump(2);
    } else if (a.format == "csv") {
        text = "key,value\n";
        text += "action," + fmt(initial) + "\n";
        for (size_t k = 0; k < flips.size(); ++k)
            text += "flip." + std::to_string(k + 1) + "," + fmt(flips[k].delta) + "\n";
        text += "final_action," + fmt(cur_action) + "\n";
    } else {
        text = "action = " + fmt(initial) + "\n";
        for (size_t k = 0; k < flips.size(); ++k)
            text += "flip " + std::to_string(k + 1) + ": apex " + flips[k].removed.str() +
                    " -> " + flips[k].added.str() + "  dS = " + fmt(flips[k].delta) + "\n";
        if (a.flips > 0) {
            if (static_cast<int>(flips.size()) < a.flips)
                text += "stopped after " + std::to_string(flips.size()) +
                        " flips (no field-supported flip remains)\n";
            text += "final action = " + fmt(cur_action) + "\n";
        }
    }
    emit(text, a.out);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete pluri-Lagrangian lattice toolkit: verification suites, "
                 "multidimensionally consistent propagation, surface actions"};
    app.require_subcommand(1);

    const std::vector<std::string> formats = {"json", "csv", "human"};

    VerifyArgs va;
    auto* verify_cmd =
        app.add_subcommand("verify", "Run a randomized verification suite and emit a report");
    verify_cmd->add_option("suite", va.suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"consistency", "octahedron", "closedness", "quad", "flip",
                               "flower", "gamma"}));
    verify_cmd->add_option("--model", va.model, "Model id (catalog depends on the suite)");
    verify_cmd->add_option("--gamma", va.gamma, "Deformation parameter for exp-gamma");
    verify_cmd->add_option("--delta", va.delta, "Extra parameter for the h3 quad model");
    verify_cmd->add_option("--trials", va.trials, "Trial count (default depends on the suite)");
    verify_cmd->add_option("--seed", va.seed, "Base seed (falls back to PLURILAG_SEED, then 42)");
    verify_cmd->add_option("--jobs", va.jobs, "Worker thread count")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--flips", va.flips, "Flips per trial (flip suite)")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--perturb", va.perturb,
                           "Leg perturbation for the closedness negative control");
    verify_cmd->add_option("--tol", va.tol,
                           "Tolerance override: NUMBER or key=NUMBER with key in "
                           "residual|action|identity|spread (repeatable)");
    verify_cmd->add_option("--format", va.format, "Report format")->check(CLI::IsMember(formats));
    verify_cmd->add_option("--out", va.out, "Write the report to a file instead of stdout");

    PropagateArgs pa;
    auto* prop_cmd = app.add_subcommand(
        "propagate", "Grow a box solution from axis data and report route spread");
    prop_cmd->add_option("--model", pa.model, "Quad model id")->required();
    prop_cmd->add_option("--delta", pa.delta, "Extra parameter for the h3 quad model");
    prop_cmd->add_option("--box", pa.box, "Box extents, e.g. 4,4,4")->delimiter(',');
    prop_cmd->add_option("--alpha", pa.alpha, "Edge parameters for directions 1,2,3")
        ->delimiter(',');
    prop_cmd->add_option("--seed", pa.seed,
                         "Seed for random axis data (falls back to PLURILAG_SEED, then 42)");
    prop_cmd->add_option("--data", pa.data, "Axis data file (field-map JSON); omit for random");
    prop_cmd->add_option("--tol", pa.tol, "Spread tolerance: NUMBER or spread=NUMBER");
    prop_cmd->add_option("--format", pa.format, "Output format")->check(CLI::IsMember(formats));
    prop_cmd->add_option("--out", pa.out, "Write the output to a file instead of stdout");

    ActionArgs aa;
    auto* act_cmd =
        app.add_subcommand("action", "Evaluate the action of a 2-form over a quad-surface");
    act_cmd->add_option("--surface", aa.surface, "Surface file (JSON)")->required();
    act_cmd->add_option("--fields", aa.fields, "Field file (JSON)")->required();
    act_cmd->add_option("--model", aa.model, "Lagrangian model id or 'zero'");
    act_cmd->add_option("--gamma", aa.gamma, "Deformation parameter for exp-gamma");
    act_cmd->add_option("--alpha", aa.alpha, "Edge parameters by direction")->delimiter(',');
    act_cmd->add_option("--flip", aa.flips, "Apply this many random flips and print each dS")
        ->check(CLI::NonNegativeNumber);
    act_cmd->add_option("--seed", aa.seed, "Seed for flip selection");
    act_cmd->add_option("--format", aa.format, "Output format")->check(CLI::IsMember(formats));
    act_cmd->add_option("--out", aa.out, "Write the output to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (verify_cmd->parsed()) return run_verify(va);
        if (prop_cmd->parsed()) return run_propagate(pa);
        return run_action(aa);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const CellError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const LookupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SolveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
