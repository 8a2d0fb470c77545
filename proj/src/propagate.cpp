#include "plurilag/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "plurilag/errors.hpp"
#include "plurilag/multi_index.hpp"

namespace plurilag::solve {

using lattice::MultiIndex;
using models::QuadFamily;
using models::QuadModel;

namespace {

double route_spread(const std::vector<long double>& routes) {
    long double scale = 1.0L;
    for (long double r : routes)
        scale = std::max(scale, std::abs(r));
    long double spread = 0.0L;
    for (size_t a = 0; a < routes.size(); ++a)
        for (size_t b = a + 1; b < routes.size(); ++b)
            spread = std::max(spread, std::abs(routes[a] - routes[b]) / scale);
    return static_cast<double>(spread);
}

struct AxisBox {
    double lo, hi, sep;
    bool log_space;
};

AxisBox axis_box(QuadFamily fam) {
    switch (fam) {
    case QuadFamily::Q3d0:
        return {-1.5, 1.5, 0.1, true};
    case QuadFamily::H3:
        return {0.5, 2.5, 0.1, false};
    default:
        return {-2.0, 2.0, 0.15, false};
    }
}

} // namespace

QuadPropagation propagate_quad(const QuadModel& m, double x, double xi, double xj, double xk,
                               const std::array<double, 3>& alpha) {
    const long double a1 = alpha[0], a2 = alpha[1], a3 = alpha[2];
    const long double xij = m.solve_corner_ld(2, {x, xi, 0.0L, xj}, a1, a2);
    const long double xjk = m.solve_corner_ld(2, {x, xj, 0.0L, xk}, a2, a3);
    const long double xik = m.solve_corner_ld(2, {x, xi, 0.0L, xk}, a1, a3);

    const std::vector<long double> routes = {
        m.solve_corner_ld(2, {xk, xik, 0.0L, xjk}, a1, a2), // face (i,j) above x_k
        m.solve_corner_ld(2, {xi, xij, 0.0L, xik}, a2, a3), // face (j,k) above x_i
        m.solve_corner_ld(2, {xj, xij, 0.0L, xjk}, a1, a3), // face (i,k) above x_j
    };
    QuadPropagation p;
    p.xij = static_cast<double>(xij);
    p.xjk = static_cast<double>(xjk);
    p.xik = static_cast<double>(xik);
    p.xijk = static_cast<double>(routes[0]);
    p.spread = route_spread(routes);
    return p;
}

BoxResult propagate_box(const QuadModel& m, const std::array<int, 3>& box,
                        const forms::FieldMap& axes, const std::array<double, 3>& alpha) {
    if (axes.dim() != 3)
        throw CellError("axis data must live in a 3-dimensional lattice, got dimension " +
                        std::to_string(axes.dim()));
    for (int n : box)
        if (n < 1)
            throw DomainError("box extents must be positive");

    const long double a1 = alpha[0], a2 = alpha[1], a3 = alpha[2];
    BoxResult r;
    auto idx = [](int a, int b, int c) { return MultiIndex({a, b, c}); };

    // Work in extended precision: stored-field roundoff feeds later solves
    // and would otherwise be amplified by their conditioning.
    std::unordered_map<MultiIndex, long double, lattice::MultiIndexHash> work;
    auto put = [&](const MultiIndex& v, long double value) {
        work.emplace(v, value);
        r.fields.set(v, static_cast<double>(value));
    };
    auto wat = [&](const MultiIndex& v) -> long double {
        const auto it = work.find(v);
        if (it == work.end()) throw LookupError("no field value at " + v.str());
        return it->second;
    };

    put(idx(0, 0, 0), axes.at(idx(0, 0, 0)));
    for (int t = 1; t <= box[0]; ++t)
        put(idx(t, 0, 0), axes.at(idx(t, 0, 0)));
    for (int t = 1; t <= box[1]; ++t)
        put(idx(0, t, 0), axes.at(idx(0, t, 0)));
    for (int t = 1; t <= box[2]; ++t)
        put(idx(0, 0, t), axes.at(idx(0, 0, t)));

    for (int s = 2; s <= box[0] + box[1] + box[2]; ++s) {
        for (int a = 0; a <= std::min(s, box[0]); ++a) {
            for (int b = 0; b <= std::min(s - a, box[1]); ++b) {
                const int c = s - a - b;
                if (c > box[2])
                    continue;
                const int positive = (a > 0) + (b > 0) + (c > 0);
                if (positive < 2)
                    continue;

                std::vector<long double> routes;
                if (a >= 1 && b >= 1)
                    routes.push_back(m.solve_corner_ld(2,
                                                       {wat(idx(a - 1, b - 1, c)),
                                                        wat(idx(a, b - 1, c)), 0.0L,
                                                        wat(idx(a - 1, b, c))},
                                                       a1, a2));
                if (b >= 1 && c >= 1)
                    routes.push_back(m.solve_corner_ld(2,
                                                       {wat(idx(a, b - 1, c - 1)),
                                                        wat(idx(a, b, c - 1)), 0.0L,
                                                        wat(idx(a, b - 1, c))},
                                                       a2, a3));
                if (a >= 1 && c >= 1)
                    routes.push_back(m.solve_corner_ld(2,
                                                       {wat(idx(a - 1, b, c - 1)),
                                                        wat(idx(a, b, c - 1)), 0.0L,
                                                        wat(idx(a - 1, b, c))},
                                                       a1, a3));

                put(idx(a, b, c), routes[0]);
                if (routes.size() > 1) {
                    ++r.completions;
                    r.max_spread = std::max(r.max_spread, route_spread(routes));
                }
            }
        }
    }
    return r;
}

forms::FieldMap sample_axes(const QuadModel& m, const std::array<int, 3>& box, Rng& rng) {
    const AxisBox bx = axis_box(m.family());
    forms::FieldMap axes(3);

    auto emit = [&](double u) { return bx.log_space ? std::exp(u) : u; };
    auto draw_next = [&](double prev_u) {
        for (int att = 0; att < 400; ++att) {
            const double u = rng.uniform(bx.lo, bx.hi);
            if (std::abs(u - prev_u) >= bx.sep)
                return u;
        }
        throw SolveError("could not draw separated axis data");
    };

    const double u0 = rng.uniform(bx.lo, bx.hi);
    axes.set(MultiIndex({0, 0, 0}), emit(u0));
    for (int d = 0; d < 3; ++d) {
        double prev = u0;
        for (int t = 1; t <= box[d]; ++t) {
            const double u = draw_next(prev);
            std::vector<int> at(3, 0);
            at[d] = t;
            axes.set(MultiIndex(at), emit(u));
            prev = u;
        }
    }
    return axes;
}

} // namespace plurilag::solve
