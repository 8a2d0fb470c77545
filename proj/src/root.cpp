#include "plurilag/root.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "plurilag/errors.hpp"

namespace plurilag::solve {

namespace {

std::optional<double> try_eval(const std::function<double(double)>& f, double x) {
    try {
        double v = f(x);
        if (!std::isfinite(v)) return std::nullopt;
        return v;
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

RootResult polish(const std::function<double(double)>& f, double a, double fa, double b,
                  double fb, const RootConfig& cfg) {
    // keep narrowing past abs_tol: downstream residual checks benefit from
    // machine-precision roots, and a bracket that collapses while |f| is
    // still large exposes a discontinuity (pole) instead of a root
    double best_x = std::abs(fa) < std::abs(fb) ? a : b;
    double best_f = std::abs(fa) < std::abs(fb) ? fa : fb;
    int used = 0;
    auto finish = [&]() -> RootResult {
        if (std::abs(best_f) <= cfg.abs_tol) return {best_x, best_f, used};
        throw SolveError("root_1d: bracket collapsed at x = " + std::to_string(best_x) +
                         " with |f| = " + std::to_string(std::abs(best_f)) + " (discontinuity)");
    };
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const double mid = 0.5 * (a + b);
        double cand = mid;
        if (it % 2 == 1 && fb != fa) { // secant step on odd iterations
            double xs = b - fb * (b - a) / (fb - fa);
            if (xs > std::min(a, b) && xs < std::max(a, b)) cand = xs;
        }
        auto fv = try_eval(f, cand);
        if (!fv && cand != mid) fv = try_eval(f, cand = mid);
        if (!fv) {
            if (std::abs(best_f) <= cfg.abs_tol) return {best_x, best_f, used};
            throw SolveError("root_1d: inadmissible interior point at x = " + std::to_string(mid));
        }
        used = it;
        if (std::abs(*fv) < std::abs(best_f)) {
            best_x = cand;
            best_f = *fv;
        }
        if (*fv == 0.0) return {cand, 0.0, it};
        if ((*fv > 0) == (fa > 0)) {
            a = cand;
            fa = *fv;
        } else {
            b = cand;
            fb = *fv;
        }
        if (std::abs(b - a) < 1e-15 * std::max({1.0, std::abs(a), std::abs(b)})) return finish();
    }
    if (std::abs(best_f) <= cfg.abs_tol) return {best_x, best_f, used};
    throw SolveError("root_1d: iteration cap (" + std::to_string(cfg.max_iter) + ") reached");
}

} // namespace

RootResult root_1d(const std::function<double(double)>& f, double lo, double hi,
                   const RootConfig& cfg, bool expand) {
    if (lo > hi) std::swap(lo, hi);
    auto flo = try_eval(f, lo);
    auto fhi = try_eval(f, hi);

    // nudge inadmissible endpoints inwards
    for (int t = 0; t < 48 && !flo; ++t) {
        lo = lo + 0.5 * (hi - lo) * 0.1;
        flo = try_eval(f, lo);
    }
    for (int t = 0; t < 48 && !fhi; ++t) {
        hi = hi - 0.5 * (hi - lo) * 0.1;
        fhi = try_eval(f, hi);
    }
    if (!flo || !fhi || lo >= hi)
        throw SolveError("root_1d: no admissible seed interval");

    if (std::abs(*flo) <= cfg.abs_tol) return {lo, *flo, 0};
    if (std::abs(*fhi) <= cfg.abs_tol) return {hi, *fhi, 0};

    bool lo_frozen = false, hi_frozen = false;
    for (int t = 0; t < 60 && (*flo > 0) == (*fhi > 0); ++t) {
        if (!expand || (lo_frozen && hi_frozen))
            throw SolveError("root_1d: f has no sign change on [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
        const double w = hi - lo;
        if (!lo_frozen) {
            if (auto v = try_eval(f, lo - 0.8 * w)) {
                lo -= 0.8 * w;
                flo = v;
            } else {
                lo_frozen = true;
            }
        }
        if ((*flo > 0) != (*fhi > 0)) break;
        if (!hi_frozen) {
            if (auto v = try_eval(f, hi + 0.8 * w)) {
                hi += 0.8 * w;
                fhi = v;
            } else {
                hi_frozen = true;
            }
        }
    }
    if ((*flo > 0) == (*fhi > 0))
        throw SolveError("root_1d: f has no sign change on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");

    return polish(f, lo, *flo, hi, *fhi, cfg);
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               int n, const RootConfig& cfg) {
    if (n < 2) throw SolveError("scan_roots: need at least 2 scan intervals");
    if (lo > hi) std::swap(lo, hi);

    std::vector<double> roots;
    std::optional<double> fprev;
    double xprev = lo;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / n;
        auto fx = try_eval(f, x);
        if (fx && std::abs(*fx) <= cfg.abs_tol) {
            roots.push_back(x);
        } else if (fx && fprev && (*fx > 0) != (*fprev > 0)) {
            try {
                roots.push_back(polish(f, xprev, *fprev, x, *fx, cfg).x);
            } catch (const SolveError&) {
                // pole or unresolvable feature inside the bracket; not a root
            }
        }
        fprev = fx;
        xprev = x;
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || std::abs(r - out.back()) > 1e-9 * std::max(1.0, std::abs(r)))
            out.push_back(r);
    return out;
}

} // namespace plurilag::solve
