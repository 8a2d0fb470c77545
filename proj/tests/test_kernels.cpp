#include <cmath>
#include <vector>

#include "doctest.h"
#include "plurilag/errors.hpp"
#include "plurilag/numeric_rank.hpp"
#include "plurilag/quadrature.hpp"
#include "plurilag/rng.hpp"
#include "plurilag/root.hpp"

using namespace plurilag;
using namespace plurilag::solve;

TEST_CASE("quadrature on smooth integrands") {
    CHECK(integrate([](double) { return 0.0; }, 0, 1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(integrate([](double) { return 1.0; }, 0, 1) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(integrate([](double t) { return 3 * t * t; }, 0, 1) ==
          doctest::Approx(1.0).epsilon(1e-13));
    // orientation flips the sign
    CHECK(integrate([](double t) { return std::cos(t); }, 1, 0) ==
          doctest::Approx(-std::sin(1.0)).epsilon(1e-13));
    // non-finite integrand values are a domain error
    CHECK_THROWS_AS(integrate([](double t) { return 1.0 / t; }, -1, 1), DomainError);
}

TEST_CASE("quadrature resolves integrable endpoint singularities") {
    // int_0^1 log s ds = -1, evaluated only at interior nodes
    CHECK(integrate([](double s) { return std::log(s); }, 0, 1) ==
          doctest::Approx(-1.0).epsilon(1e-11));
    // split integration across an interior kink
    const double v = integrate_split([](double s) { return std::log(std::abs(s)); }, -1, 1, {0.0});
    CHECK(v == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("antiderivative is additive and differentiates back") {
    auto g = [](double s) { return std::exp(-s) + 0.25 * s; };
    const double whole = antiderivative(g, -0.5, 2.0);
    const double part = antiderivative(g, -0.5, 0.7) + antiderivative(g, 0.7, 2.0);
    CHECK(whole == doctest::Approx(part).epsilon(1e-11));

    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const double u = rng.uniform(-1.5, 1.5);
        const double h = 1e-6;
        const double d = (antiderivative(g, 0, u + h) - antiderivative(g, 0, u - h)) / (2 * h);
        CHECK(d == doctest::Approx(g(u)).epsilon(1e-6));
    }
}

TEST_CASE("root_1d on brackets and with expansion") {
    auto r = root_1d([](double t) { return t - 1; }, 0, 2);
    CHECK(r.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.residual) < 1e-12);

    // expansion walks out of a seed interval without a sign change
    auto e = root_1d([](double t) { return t - 1; }, 3, 4);
    CHECK(e.x == doctest::Approx(1.0).epsilon(1e-12));

    // four-leg corner equation in the unknown x_ik: remaining legs are
    // 2/(2-0) - (2-1)/(1-0) + (3-1)/(-1-0) = -2, so -3/t - 2 = 0 at -1.5
    auto four_leg = [](double t) {
        if (t == 0.0) throw DomainError("pole");
        return 2.0 / 2.0 - 3.0 / t - (2.0 - 1.0) / 1.0 + (3.0 - 1.0) / (-1.0);
    };
    auto q = root_1d(four_leg, -4, -0.5);
    CHECK(q.x == doctest::Approx(-1.5).epsilon(1e-12));

    CHECK_THROWS_AS(root_1d([](double t) { return t * t + 1; }, -1, 1), SolveError);
}

TEST_CASE("scan_roots finds all simple roots and rejects poles") {
    auto roots = scan_roots([](double t) { return (t - 1) * (t - 2) * (t - 3); }, 0, 4, 200);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(roots[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(roots[2] == doctest::Approx(3.0).epsilon(1e-12));

    // a pole flips the sign but is not a root
    auto pole = scan_roots(
        [](double t) {
            if (t == 1.0) throw DomainError("pole");
            return 1.0 / (t - 1.0);
        },
        0, 2, 101);
    CHECK(pole.empty());

    // mixed: pole at 0, root at -1.5
    auto mixed = scan_roots(
        [](double t) {
            if (t == 0.0) throw DomainError("pole");
            return -3.0 / t - 2.0;
        },
        -8, 8, 481);
    REQUIRE(mixed.size() == 1);
    CHECK(mixed[0] == doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("numeric rank by singular values") {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    CHECK(numeric_rank(id) == 2);
    CHECK(numeric_rank(Eigen::MatrixXd::Zero(4, 6)) == 0);

    Eigen::VectorXd u(5), v(3);
    u << 1, -2, 0.5, 3, 1;
    v << 2, 1, -1;
    Eigen::MatrixXd outer = u * v.transpose();
    CHECK(numeric_rank(outer) == 1);

    // tiny contamination above/below the relative threshold
    Eigen::MatrixXd m = outer;
    m(0, 0) += 1e-3;
    CHECK(numeric_rank(m) == 2);

    Eigen::MatrixXd bad = id;
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(numeric_rank(bad), DomainError);
}

TEST_CASE("corner jacobian central differences") {
    using forms::CubeFields;
    using forms::CubeLabel;
    using forms::octa_labels;
    // residual_l = (field_l)^2 - product of the two cyclic alphas: diagonal
    // Jacobian with entries 2*field
    auto res = [](const CubeFields& f, CubeLabel l) { return f.at(l) * f.at(l); };
    CubeFields at;
    int t = 0;
    for (auto l : octa_labels()) at.at(l) = 0.5 + 0.25 * t++;
    auto J = corner_jacobian(res, at);
    REQUIRE(J.rows() == 6);
    REQUIRE(J.cols() == 6);
    t = 0;
    for (auto l : octa_labels()) {
        const int d = t++;
        for (int c = 0; c < 6; ++c) {
            if (c == d)
                CHECK(J(d, c) == doctest::Approx(2 * at.at(l)).epsilon(1e-8));
            else
                CHECK(J(d, c) == doctest::Approx(0.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("rng streams are deterministic and lane-independent") {
    Rng a = Rng::substream(5, 7, 0);
    Rng b = Rng::substream(5, 7, 0);
    for (int t = 0; t < 16; ++t) CHECK(a.next_u64() == b.next_u64());

    Rng c = Rng::substream(5, 7, 1);
    Rng d = Rng::substream(5, 8, 0);
    bool all_equal = true;
    Rng a2 = Rng::substream(5, 7, 0);
    for (int t = 0; t < 16; ++t) {
        const uint64_t x = a2.next_u64();
        if (x != c.next_u64() || x != d.next_u64()) all_equal = false;
    }
    CHECK(!all_equal);

    Rng e(42);
    for (int t = 0; t < 1000; ++t) {
        const double u = e.uniform(2.0, 3.0);
        CHECK(u >= 2.0);
        CHECK(u < 3.0);
        const int i = e.uniform_int(-2, 2);
        CHECK(i >= -2);
        CHECK(i <= 2);
    }
}
