#pragma once

#include "arctic/exact.hpp"

namespace arctic {

// Total count of n x n alternating-sign matrices.
struct AsmCount {
    long n;
    ExactInteger value;  // >= 1
};

// Count of n x n ASMs whose unique first-row 1 sits in column k (1-based).
struct RefinedAsmCount {
    long n;
    long k;
    ExactInteger value;
};

// A_n = prod_{j=0}^{n-1} (3j+1)! / (n+j)!  (1, 2, 7, 42, 429, ...).
AsmCount asm_count(long n);

// A_n(k) = C(n+k-2, k-1) * (2n-k-1)!/(n-k)! * prod_{j=0}^{n-2} (3j+1)!/(n+j)!.
RefinedAsmCount asm_1refined(long n, long k);

// Contribution of the outermost path when growing order n to n+1 with the new
// first-row 1 pinned at column k:
//   z1out(n, k) = A_{n+1}(k) / A_n = C(n+k-1, n) C(2n-k+1, n) / C(2n, n).
ExactRational z1out(long n, long k);

// Doubly refined corner ratio A_{n+1}(1|1)/A_n: exactly 1 for every n (a 1 at
// the corner forces the first row and column).
ExactRational asm_11_ratio(long n);

// Exhaustive oracle: count ASMs by backtracking over row vectors in
// {-1,0,1}^n whose nonzero entries alternate and start/end with +1, keeping
// prefix column sums in {0,1}. Capped at n <= settings().brute_cap. When
// top_row_k >= 1, count only matrices with the first-row 1 in that column.
ExactInteger asm_enumerate(long n, long top_row_k = 0);

// (1/n) log z1out(n, floor(rn)); converges to asm_S(r, 1/2), i.e.
// (1+r)log(1+r) - r log r + (2-r)log(2-r) - (1-r)log(1-r) - 2 log 2.
double asm_rate(long n, double r);

// (1/n) log (A_{n+1}/A_n) = (1/n) log( C(3n+1,n) / C(2n,n) );
// converges to log(27/16).
double asm_growth_rate(long n);

// Predicted rate for the doubly refined boundary problems (two pinned
// boundary 1s, on opposite or on the same edge): the two refinements
// decouple at leading order, so the prediction is asm_S(r1,1/2)+asm_S(r2,1/2).
// No exact lattice counterpart is implemented; reported as "predicted".
double tb_tt_predicted_rate(double r1, double r2);

}  // namespace arctic
