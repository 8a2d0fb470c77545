#pragma once

#include <array>

#include "plurilag/fields.hpp"
#include "plurilag/models.hpp"
#include "plurilag/rng.hpp"

namespace plurilag::solve {

// One cube of quad propagation: the three two-index fields from face solves
// around x, then x_ijk computed along all three faces containing it.
// `spread` is the maximum relative disagreement of the three x_ijk routes.
struct QuadPropagation {
    double xij = 0, xjk = 0, xik = 0, xijk = 0;
    double spread = 0;
};

QuadPropagation propagate_quad(const models::QuadModel& m, double x, double xi, double xj,
                               double xk, const std::array<double, 3>& alpha);

// Field on the (n1+1) x (n2+1) x (n3+1) vertex box grown cube by cube from
// data on the three coordinate axes. Every vertex with at least two
// positive coordinates is computed along all admissible face routes;
// max_spread is the worst relative route disagreement, completions the
// number of multi-route vertices.
struct BoxResult {
    forms::FieldMap fields;
    double max_spread = 0;
    long completions = 0;

    BoxResult() : fields(3) {}
};

BoxResult propagate_box(const models::QuadModel& m, const std::array<int, 3>& box,
                        const forms::FieldMap& axes, const std::array<double, 3>& alpha);

// Random well-separated data on the three coordinate axes of the box
// (model-appropriate value ranges), suitable as propagate_box input.
forms::FieldMap sample_axes(const models::QuadModel& m, const std::array<int, 3>& box, Rng& rng);

} // namespace plurilag::solve
