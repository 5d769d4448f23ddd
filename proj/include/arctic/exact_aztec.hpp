#pragma once

#include <vector>

#include "arctic/exact.hpp"

namespace arctic {

// Level-step weight of the Aztec path model; w > 0 for the lattice model.
struct WeightParam {
    ExactRational w;
    explicit WeightParam(ExactRational value);
};

// Displaced-endpoint data (k_1 < ... < k_m | l_1 < ... < l_m), k_i, l_i >= 1.
// m = 0 is the unrefined case.
struct RefinementSpec {
    std::vector<long> kvec;
    std::vector<long> lvec;
    RefinementSpec() = default;
    RefinementSpec(std::vector<long> k, std::vector<long> l);
    size_t m() const { return kvec.size(); }
    RefinementSpec transposed() const { return RefinementSpec(lvec, kvec); }
};

// The m x m matrix of LU cross terms
//   g_{a,b} = sum_{j=1}^{min(k_a,l_b)} L_{n+k_a, n+j} U_{n+j, n+l_b}
// whose determinant is the multirefined-to-unrefined ratio Z_{n+m}/Z_n.
struct GMatrix {
    long n;
    RefinementSpec spec;
    std::vector<std::vector<ExactRational>> entries;
};

// Trinomial path count A_{i,j} = sum_p w^p (i+j-p)! / ((i-p)!(j-p)!p!);
// A_{i,0} = A_{0,j} = 1.
ExactRational trinomial_entry(long i, long j, const WeightParam& w);

// LU factors of the semi-infinite trinomial matrix: L_{i,j} = C(i,j) for
// i >= j, U_{i,j} = (1+w)^i C(j,i) for i <= j; IndexOrder otherwise.
ExactInteger lu_entry_L(long i, long j);
ExactRational lu_entry_U(long i, long j, const WeightParam& w);

// Z_n = (1+w)^{n(n+1)/2}.
ExactRational unrefined_Z(long n, const WeightParam& w);

// Single cross term g(n, k, l) (see GMatrix); evaluated by running the j-sum
// with incrementally updated binomials, so no factorial tables are needed.
ExactRational g_entry(long n, long k, long l, const WeightParam& w);

GMatrix g_matrix(long n, const RefinementSpec& spec, const WeightParam& w);

// det(g) = Z_{n+m}(kvec|lvec) / Z_n, by fraction-free elimination.
ExactRational multirefined_ratio(long n, const RefinementSpec& spec,
                                 const WeightParam& w);

// Independent oracle: determinant of the (n+1+m) x (n+1+m) submatrix of the
// trinomial matrix with rows {0..n} + {n+k_a} and columns {0..n} + {n+l_b}.
// Equals multirefined_ratio * Z_n. Capped at n+m <= settings().lgv_cap.
ExactRational lgv_oracle(long n, const RefinementSpec& spec,
                         const WeightParam& w);

// Second oracle, below the determinant lemma: exhaustive enumeration of
// vertex-disjoint path families. Path a runs from (-i_a, -i_a) to (j_a, -j_a)
// over steps (1,1), (1,-1), (2,0), where {i_a} / {j_a} are the row/column sets
// of lgv_oracle; level-step midpoints are not vertices; a configuration's
// weight is w^(total level steps). The index-0 member is the stationary path
// at the origin. Capped at n+m <= settings().brute_cap.
ExactRational brute_force_paths(long n, const RefinementSpec& spec,
                                const WeightParam& w);

// (1/n) log g(n, floor(rn), floor(sn)); converges to the entropy S(r,s).
double aztec_rate(long n, double r, double s, const WeightParam& w);

// (1/n) log det g over a refinement built from floor(r_a n), floor(s_a n).
double multirefined_rate(long n, const std::vector<double>& rvec,
                         const std::vector<double>& svec, const WeightParam& w);

}  // namespace arctic
