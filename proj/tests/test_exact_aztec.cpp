#include <doctest.h>

#include <cmath>
#include <vector>

#include "arctic/entropy.hpp"
#include "arctic/errors.hpp"
#include "arctic/exact_aztec.hpp"

using namespace arctic;

namespace {
const WeightParam kOne{ExactRational(1)};
const WeightParam kHalf{ExactRational(1, 2)};
const WeightParam kThreeHalves{ExactRational(3, 2)};
}  // namespace

TEST_CASE("trinomial entries") {
    CHECK(trinomial_entry(0, 0, kOne) == ExactRational(1));
    CHECK(trinomial_entry(5, 0, kOne) == ExactRational(1));
    CHECK(trinomial_entry(0, 7, kHalf) == ExactRational(1));
    CHECK(trinomial_entry(1, 1, kOne) == ExactRational(3));
    CHECK(trinomial_entry(2, 2, kOne) == ExactRational(13));
    // w = 1/2: 6 + 6/2 + 1/4 = 37/4 at (2,2).
    CHECK(trinomial_entry(2, 2, kHalf) == ExactRational(37, 4));
    CHECK_THROWS_AS(trinomial_entry(-1, 0, kOne), IndexRange);
}

TEST_CASE("LU factorization of the trinomial matrix") {
    for (const WeightParam& w : {kOne, kHalf, kThreeHalves}) {
        for (long i = 0; i <= 8; ++i) {
            for (long k = 0; k <= 8; ++k) {
                ExactRational sum = 0;
                for (long j = 0; j <= std::min(i, k); ++j) {
                    sum += ExactRational(lu_entry_L(i, j)) *
                           lu_entry_U(j, k, w);
                }
                CHECK(sum == trinomial_entry(i, k, w));
            }
        }
    }
    CHECK_THROWS_AS(lu_entry_L(2, 5), IndexOrder);
    CHECK_THROWS_AS(lu_entry_U(5, 2, kOne), IndexOrder);
}

TEST_CASE("unrefined partition function") {
    CHECK(unrefined_Z(6, kOne) == ExactRational(2097152));
    CHECK(unrefined_Z(0, kHalf) == ExactRational(1));
    // Against the determinant oracle (independent of the product formula).
    for (const WeightParam& w : {kOne, kHalf, kThreeHalves}) {
        for (long n = 0; n <= 6; ++n) {
            CHECK(unrefined_Z(n, w) == lgv_oracle(n, RefinementSpec{}, w));
        }
    }
}

TEST_CASE("g entries against the explicit LU sum") {
    for (const WeightParam& w : {kOne, kThreeHalves}) {
        for (long n : {0L, 1L, 3L, 6L}) {
            for (long k : {1L, 2L, 5L}) {
                for (long l : {1L, 3L, 4L}) {
                    ExactRational sum = 0;
                    for (long j = 1; j <= std::min(k, l); ++j) {
                        sum += ExactRational(lu_entry_L(n + k, n + j)) *
                               lu_entry_U(n + j, n + l, w);
                    }
                    CHECK(g_entry(n, k, l, w) == sum);
                }
            }
        }
    }
}

TEST_CASE("singly refined g entry closed form") {
    for (const WeightParam& w : {kOne, kHalf}) {
        const ExactRational opw = w.w + 1;
        for (long n : {0L, 2L, 5L}) {
            for (long k : {1L, 2L, 4L, 9L}) {
                CHECK(g_entry(n, k, 1, w) ==
                      pow_rational(opw, static_cast<unsigned long>(n) + 1) *
                          ExactRational(binomial(n + k, n + 1)));
            }
        }
    }
}

TEST_CASE("refinement spec validation") {
    CHECK_THROWS_AS(RefinementSpec({1, 2}, {1}), SizeCap);
    CHECK_THROWS_AS(RefinementSpec({2, 2}, {1, 3}), IndexOrder);
    CHECK_THROWS_AS(RefinementSpec({0}, {1}), IndexRange);
    const RefinementSpec spec({1, 4}, {2, 3});
    CHECK(spec.m() == 2);
    CHECK(spec.transposed().kvec == std::vector<long>{2, 3});
}

TEST_CASE("multirefined ratio equals the determinant oracle") {
    const std::vector<RefinementSpec> specs = {
        RefinementSpec({1}, {1}),      RefinementSpec({2}, {3}),
        RefinementSpec({1, 3}, {2, 4}), RefinementSpec({2, 5}, {1, 6}),
        RefinementSpec({1, 2, 3}, {1, 2, 3}),
        RefinementSpec({1, 3, 6}, {2, 4, 5})};
    for (const WeightParam& w : {kOne, kHalf, kThreeHalves}) {
        for (long n : {0L, 1L, 2L, 4L, 7L}) {
            for (const RefinementSpec& spec : specs) {
                ExactRational expect = lgv_oracle(n, spec, w) /
                                       unrefined_Z(n, w);
                expect.canonicalize();
                CHECK(multirefined_ratio(n, spec, w) == expect);
            }
        }
    }
}

TEST_CASE("ratios are integers at w = 1") {
    for (long n : {0L, 2L, 5L}) {
        for (const RefinementSpec& spec :
             {RefinementSpec({2}, {4}), RefinementSpec({1, 3}, {2, 5})}) {
            const ExactRational q = multirefined_ratio(n, spec, kOne);
            CHECK(q.get_den() == 1);
        }
    }
}

TEST_CASE("brute force path families agree with the determinant") {
    for (const WeightParam& w : {kOne, kHalf}) {
        for (long n : {0L, 1L, 2L}) {
            for (const RefinementSpec& spec :
                 {RefinementSpec({1}, {1}), RefinementSpec({2}, {1}),
                  RefinementSpec({1}, {3}), RefinementSpec({2}, {2})}) {
                CHECK(brute_force_paths(n, spec, w) ==
                      lgv_oracle(n, spec, w));
            }
        }
        CHECK(brute_force_paths(1, RefinementSpec({1, 2}, {1, 2}), w) ==
              lgv_oracle(1, RefinementSpec({1, 2}, {1, 2}), w));
        CHECK(brute_force_paths(3, RefinementSpec({1}, {2}), w) ==
              lgv_oracle(3, RefinementSpec({1}, {2}), w));
    }
}

TEST_CASE("oracle caps") {
    CHECK_THROWS_AS(lgv_oracle(45, RefinementSpec({1}, {1}), kOne),
                    CapExceeded);
    CHECK_THROWS_AS(brute_force_paths(5, RefinementSpec({1}, {1}), kOne),
                    CapExceeded);
}

TEST_CASE("aztec rate approaches the entropy") {
    const double s150 = aztec_rate(150, 0.5, 0.5, kOne);
    const double s300 = aztec_rate(300, 0.5, 0.5, kOne);
    const double want = aztec_S(0.5, 0.5, 1.0);
    CHECK(std::abs(s150 - want) < 0.1);
    CHECK(std::abs(s300 - want) < std::abs(s150 - want));
}

TEST_CASE("multirefined rate factorizes at matched order") {
    const std::vector<double> r = {0.8, 1.0, 1.2};
    const std::vector<double> s = {0.9, 1.1, 1.3};
    const long n = 120;
    const double joint = multirefined_rate(n, r, s, kOne);
    double separate = 0.0;
    for (size_t a = 0; a < r.size(); ++a) {
        separate += aztec_rate(n, r[a], s[a], kOne);
    }
    CHECK(std::abs(joint - separate) < 1e-2);
}
