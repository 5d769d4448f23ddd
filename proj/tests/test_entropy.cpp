#include <doctest.h>

#include <cmath>
#include <vector>

#include "arctic/entropy.hpp"
#include "arctic/errors.hpp"
#include "arctic/numeric.hpp"

using namespace arctic;

TEST_CASE("aztec closed-form solution satisfies the algebraic system") {
    for (double w : {0.5, 1.0, 2.0}) {
        for (double t = -0.9; t <= 0.901; t += 0.2) {
            double x, y;
            aztec_xy(t, w, x, y);
            const double P = x * y + x / y + w * x * x;
            CHECK(P == doctest::Approx(1.0).epsilon(1e-13));
            // t x dP/dx = y dP/dy: t(xy + x/y + 2wx^2) = xy - x/y.
            const double lhs = t * (x * y + x / y + 2.0 * w * x * x);
            const double rhs = x * y - x / y;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("lagrangean special values") {
    CHECK(aztec_L(1.0, 1.0) == 0.0);
    CHECK(aztec_L(-1.0, 1.0) == 0.0);
    CHECK(aztec_L(1.0, 0.35) == 0.0);
    CHECK(aztec_L(0.0, 1.0) ==
          doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-15));
    CHECK(asm_L(0.0) == 0.0);
    CHECK(asm_L(-1.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    // Even in t for the aztec model.
    CHECK(aztec_L(0.4, 2.0) == doctest::Approx(aztec_L(-0.4, 2.0)).epsilon(1e-13));
}

TEST_CASE("entropy surface special values") {
    CHECK(aztec_S(0.0, 0.0, 1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(aztec_S(0.0, 0.0, 0.7) ==
          doctest::Approx(std::log(1.7)).epsilon(1e-14));
    CHECK(aztec_S(1.0, 1.0, 1.0) ==
          doctest::Approx(4.0 * std::log(1.0 + std::sqrt(2.0)))
              .epsilon(1e-13));
    CHECK(asm_S(0.5, 0.5) ==
          doctest::Approx(std::log(27.0 / 16.0)).epsilon(1e-13));
    CHECK(asm_S(0.0, 0.0) == 0.0);
    // Half-line section used by the refined ASM counts.
    const auto half = [](double u) {
        return xlogx(1 + u) - xlogx(u) + xlogx(2 - u) - xlogx(1 - u);
    };
    for (double r : {0.1, 0.3, 0.45}) {
        CHECK(asm_S(r, 0.5) ==
              doctest::Approx(half(r) - 2.0 * std::log(2.0)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(asm_S(0.6, 0.2), DomainError);
    CHECK_THROWS_AS(asm_S(-0.1, 0.2), DomainError);
    CHECK_THROWS_AS(aztec_S(-0.5, 1.0, 1.0), DomainError);
}

TEST_CASE("entropy surface object") {
    const EntropySurface az = entropy_surface("aztec", 1.0);
    CHECK(az.value(0.7, 0.9) ==
          doctest::Approx(aztec_S(0.7, 0.9, 1.0)).epsilon(1e-15));
    CHECK(az.lower_branch(0.4, 0.4));
    CHECK_FALSE(az.lower_branch(1.2, 1.2));
    const EntropySurface as = entropy_surface("asm");
    CHECK(as.value(0.3, 0.4) ==
          doctest::Approx(asm_S(0.3, 0.4)).epsilon(1e-15));
    CHECK(as.lower_branch(0.1, 0.1));
    CHECK_FALSE(as.lower_branch(0.45, 0.45));
    CHECK_THROWS_AS(entropy_surface("pentagon"), DomainError);
}

TEST_CASE("branch continuity along both boundaries") {
    for (double w : {0.5, 1.0, 2.0}) {
        for (double r = 0.4; r <= 2.4; r += 0.25) {
            const double s = 1.0 / ((1.0 + w) * r);
            const double lower = xlogx(r + 1) - xlogx(r) + xlogx(s + 1) -
                                 xlogx(s) + std::log(1.0 + w);
            const double t = (s - r) / (r + s + 2.0);
            const double upper = (r + s + 2.0) * aztec_L(t, w);
            CHECK(lower == doctest::Approx(upper).epsilon(1e-11));
        }
    }
    for (double r = 0.05; r <= 0.48; r += 0.04) {
        const double s = (1.0 - 2.0 * r) / (2.0 - r);
        const double lower = xlogx(r + s) - xlogx(r) - xlogx(s);
        const auto half = [](double u) {
            return xlogx(1 + u) - xlogx(u) + xlogx(2 - u) - xlogx(1 - u);
        };
        const double upper = half(r) + half(s) - 3.0 * std::log(3.0);
        CHECK(lower == doctest::Approx(upper).epsilon(1e-11));
    }
}

TEST_CASE("arctic curves") {
    const ArcticCurve az = aztec_curve(1.0);
    CHECK(az.h(0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    for (double x = -0.6; x <= 0.601; x += 0.2) {
        CHECK(az.residual(x, az.h(x)) == doctest::Approx(0.0).epsilon(1e-13));
        const double h = 1e-6;
        CHECK(az.hprime(x) ==
              doctest::Approx((az.h(x + h) - az.h(x - h)) / (2 * h))
                  .epsilon(1e-6));
    }
    const ArcticCurve as = asm_curve();
    CHECK(as.h(0.5) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(as.h(0.0) == doctest::Approx(0.5).epsilon(1e-13));
    for (double x = 0.05; x <= 0.46; x += 0.1) {
        const double y = as.h(x);
        // Conic membership: x(1-x) + y(1-y) + xy = 1/4.
        CHECK(x * (1 - x) + y * (1 - y) + x * y ==
              doctest::Approx(0.25).epsilon(1e-13));
        const double h = 1e-6;
        CHECK(as.hprime(x) ==
              doctest::Approx((as.h(x + h) - as.h(x - h)) / (2 * h))
                  .epsilon(1e-6));
    }
}

TEST_CASE("aztec tangency is geometrically tangent") {
    for (double w : {0.5, 1.0, 2.0}) {
        const ArcticCurve curve = aztec_curve(w);
        for (double r : {0.1, 0.3, 0.6}) {
            double t1, x1;
            tangency_aztec(r, w, t1, x1);
            const auto line = [&](double x) {
                return t1 * (x + 1.0 + r) + r;
            };
            CHECK(curve.h(x1) == doctest::Approx(line(x1)).epsilon(1e-10));
            CHECK(curve.hprime(x1) == doctest::Approx(t1).epsilon(1e-9));
        }
    }
    const Tangency pair = tangency_aztec_pair(0.25, 0.4, 1.0);
    double t2s, x2s;
    tangency_aztec(0.4, 1.0, t2s, x2s);
    CHECK(pair.t2 == doctest::Approx(-t2s).epsilon(1e-15));
    CHECK(pair.x2 == doctest::Approx(-x2s).epsilon(1e-15));
    CHECK(pair.t1 > pair.t2);  // the aztec arc is concave
    CHECK(pair.x1 < pair.x2);
    CHECK_THROWS_AS(tangency_aztec_pair(2.0, 2.0, 1.0), NoArc);
}

TEST_CASE("asm tangency is geometrically tangent") {
    const ArcticCurve curve = asm_curve();
    for (double r : {0.25, 0.35, 0.45}) {
        const double s = 0.4;
        const Tangency tg = tangency_asm(r, s);
        CHECK(curve.h(tg.x1) ==
              doctest::Approx(tg.t1 * tg.x1 + r).epsilon(1e-10));
        CHECK(curve.hprime(tg.x1) == doctest::Approx(tg.t1).epsilon(1e-8));
        // Exit side: line through (s, 0).
        CHECK(curve.h(tg.x2) ==
              doctest::Approx(tg.t2 * (tg.x2 - s)).epsilon(1e-10));
        CHECK(curve.hprime(tg.x2) == doctest::Approx(tg.t2).epsilon(1e-8));
    }
    CHECK_THROWS_AS(tangency_asm(0.1, 0.1), NoArc);
}

TEST_CASE("trajectories and the action functional") {
    // Lower regime (endpoints close in): the chord would cut the temperate
    // region, so the path hugs the arc; quadrature along the arc.
    const Trajectory arc = build_trajectory_aztec(0.3, 0.4, 1.0);
    CHECK(arc.kind == Trajectory::Kind::tangent_arc_tangent);
    CHECK(std::abs(action(arc) - aztec_S(0.3, 0.4, 1.0)) < 1e-10);

    // Upper regime: the straight chord clears the curve; exact segment action.
    const Trajectory chord = build_trajectory_aztec(0.9, 1.4, 1.0);
    CHECK(chord.kind == Trajectory::Kind::straight_line);
    CHECK(action(chord) ==
          doctest::Approx(aztec_S(0.9, 1.4, 1.0)).epsilon(1e-12));

    for (double w : {0.5, 2.0}) {
        for (double r : {0.2, 0.8, 1.6}) {
            for (double s : {0.3, 1.1, 1.9}) {
                const Trajectory traj = build_trajectory_aztec(r, s, w);
                CHECK(std::abs(action(traj) - aztec_S(r, s, w)) < 1e-10);
            }
        }
    }

    for (double r : {0.05, 0.2, 0.35, 0.5}) {
        for (double s : {0.05, 0.25, 0.45, 0.5}) {
            const Trajectory traj = build_trajectory_asm(r, s);
            CHECK(std::abs(action(traj) - asm_S(r, s)) < 1e-10);
        }
    }

    // Corner: full arc, no straight pieces.
    const Trajectory full = build_trajectory_asm(0.5, 0.5);
    CHECK(std::abs(action(full) - std::log(27.0 / 16.0)) < 1e-10);

    // Degenerate edge: s = 0 collapses to a vertical drop of zero action.
    const Trajectory edge = build_trajectory_asm(0.3, 0.0);
    CHECK(action(edge) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("saddle point of the g-entry sum") {
    for (double w : {0.5, 1.0, 2.0}) {
        for (double r : {0.3, 0.8, 1.5}) {
            for (double s : {0.4, 1.0, 1.8}) {
                const double xi = saddle_xi_star(r, s, w);
                CHECK(xi >= 0.0);
                CHECK(xi <= std::min(r, s) + 1e-15);
                CHECK(std::abs(saddle_F(xi, r, s, w) - aztec_S(r, s, w)) <
                      1e-11);
                // Interior maximum: neighbors are not higher.
                if (xi > 1e-9) {
                    const double h = 1e-7;
                    CHECK(saddle_F(xi, r, s, w) >=
                          saddle_F(xi - h, r, s, w) - 1e-12);
                    CHECK(saddle_F(xi, r, s, w) >=
                          saddle_F(xi + h, r, s, w) - 1e-12);
                }
            }
        }
    }
    // Lower regime pins the saddle at zero.
    CHECK(saddle_xi_star(0.4, 0.4, 1.0) == 0.0);
    // w -> 0 degenerate quadratic still solves (xi+1)^2 = (r-xi)(s-xi).
    const double xi0 = saddle_xi_star(2.0, 3.0, 0.0);
    CHECK((xi0 + 1) * (xi0 + 1) ==
          doctest::Approx((2.0 - xi0) * (3.0 - xi0)).epsilon(1e-12));
}

TEST_CASE("permutation argmax") {
    // Sorted inputs: identity always attains the maximum.
    const PermutationArgmax upper = max_permutation_action(
        {1.1, 1.5, 2.1}, {1.2, 1.7, 2.4}, "aztec", 1.0);
    CHECK(upper.identity_in_argmax);
    CHECK(upper.argmax.size() == 1);  // distinct entries, upper regime

    const PermutationArgmax lower = max_permutation_action(
        {0.1, 0.2, 0.3}, {0.15, 0.25, 0.35}, "aztec", 1.0);
    CHECK(lower.identity_in_argmax);
    CHECK(lower.argmax.size() == 6);  // separable branch: every permutation

    const PermutationArgmax asm_case = max_permutation_action(
        {0.2, 0.3, 0.4}, {0.25, 0.35, 0.45}, "asm", 1.0);
    CHECK(asm_case.identity_in_argmax);

    CHECK_THROWS_AS(max_permutation_action({0.3, 0.1}, {0.1, 0.2}, "aztec",
                                           1.0),
                    IndexOrder);
    const std::vector<double> big(9, 1.0);
    CHECK_THROWS_AS(max_permutation_action(big, big, "aztec", 1.0), SizeCap);
}

TEST_CASE("difference monotonicity in the two regimes") {
    std::vector<double> r_grid;
    for (int i = 0; i < 20; ++i) r_grid.push_back(0.05 + i * 0.15);
    const MonotonicityReport az =
        difference_monotonicity(r_grid, 1.2, 0.8, "aztec", 1.0);
    CHECK(az.constant_in_lower_regime);
    CHECK(az.increasing_in_upper_regime);
    CHECK(std::abs(az.worst_lower_drift) <= 1e-10);

    std::vector<double> r_asm;
    for (int i = 0; i < 20; ++i) r_asm.push_back(0.02 + i * 0.024);
    const MonotonicityReport as =
        difference_monotonicity(r_asm, 0.45, 0.3, "asm", 1.0);
    CHECK(as.constant_in_lower_regime);
    CHECK(as.increasing_in_upper_regime);
}
