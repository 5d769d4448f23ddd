#include "arctic/exact_asm.hpp"

#include <cmath>

#include "arctic/entropy.hpp"
#include "arctic/errors.hpp"
#include "arctic/numeric.hpp"

namespace arctic {

namespace {

// prod_{j=0}^{count-1} (3j+1)! / (n+j)! as an exact rational.
ExactRational product_tail(long n, long count) {
    ExactRational v = 1;
    for (long j = 0; j < count; ++j) {
        v *= ExactRational(factorial(static_cast<unsigned long>(3 * j + 1)),
                           factorial(static_cast<unsigned long>(n + j)));
    }
    return v;
}

ExactInteger as_integer(ExactRational v, const char* what) {
    v.canonicalize();
    if (v.get_den() != 1) {
        throw ValueOutOfRange(std::string(what) +
                              " did not reduce to an integer");
    }
    return v.get_num();
}

}  // namespace

AsmCount asm_count(long n) {
    if (n < 1) {
        throw IndexRange("asm order must be >= 1");
    }
    return AsmCount{n, as_integer(product_tail(n, n), "asm count")};
}

RefinedAsmCount asm_1refined(long n, long k) {
    if (n < 1) {
        throw IndexRange("asm order must be >= 1");
    }
    if (k < 1 || k > n) {
        throw IndexRange("refined column must satisfy 1 <= k <= n");
    }
    ExactRational v(binomial(n + k - 2, k - 1) *
                        factorial(static_cast<unsigned long>(2 * n - k - 1)),
                    factorial(static_cast<unsigned long>(n - k)));
    v *= product_tail(n, n - 1);
    return RefinedAsmCount{n, k, as_integer(v, "refined asm count")};
}

ExactRational z1out(long n, long k) {
    if (n < 1) {
        throw IndexRange("asm order must be >= 1");
    }
    if (k < 1 || k > n + 1) {
        throw IndexRange("boundary column must satisfy 1 <= k <= n+1");
    }
    ExactRational v(binomial(n + k - 1, n) * binomial(2 * n - k + 1, n),
                    binomial(2 * n, n));
    v.canonicalize();
    return v;
}

ExactRational asm_11_ratio(long n) {
    if (n < 1) {
        throw IndexRange("asm order must be >= 1");
    }
    return 1;
}

ExactInteger asm_enumerate(long n, long top_row_k) {
    if (n < 1) {
        throw IndexRange("asm order must be >= 1");
    }
    if (n > settings().brute_cap) {
        throw CapExceeded("exhaustive asm oracle capped at n <= " +
                          std::to_string(settings().brute_cap));
    }
    if (top_row_k < 0 || top_row_k > n) {
        throw IndexRange("top-row column out of range");
    }
    // Candidate rows: vectors in {-1,0,1}^n whose nonzero entries alternate
    // in sign, starting and ending with +1.
    std::vector<std::vector<int>> rows;
    std::vector<int> cells(static_cast<size_t>(n));
    auto gen = [&](auto&& self, long i) -> void {
        if (i == n) {
            int last = 0;
            bool ok = true;
            for (int c : cells) {
                if (c == 0) continue;
                if (last == 0 ? c != 1 : c == last) {
                    ok = false;
                    break;
                }
                last = c;
            }
            if (ok && last == 1) rows.push_back(cells);
            return;
        }
        for (int c : {-1, 0, 1}) {
            cells[static_cast<size_t>(i)] = c;
            self(self, i + 1);
        }
    };
    gen(gen, 0);

    ExactInteger count = 0;
    std::vector<int> colsum(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, long depth, long first_k) -> void {
        if (depth == n) {
            for (int c : colsum) {
                if (c != 1) return;
            }
            if (top_row_k == 0 || first_k == top_row_k) count += 1;
            return;
        }
        for (const auto& cand : rows) {
            bool ok = true;
            for (size_t j = 0; j < cand.size(); ++j) {
                const int v = colsum[j] + cand[j];
                if (v < 0 || v > 1) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (size_t j = 0; j < cand.size(); ++j) colsum[j] += cand[j];
            long fk = first_k;
            if (depth == 0) {
                fk = 1;
                while (cand[static_cast<size_t>(fk - 1)] != 1) ++fk;
            }
            self(self, depth + 1, fk);
            for (size_t j = 0; j < cand.size(); ++j) colsum[j] -= cand[j];
        }
    };
    rec(rec, 0, 0);
    return count;
}

double asm_rate(long n, double r) {
    if (!(r <= 0.5)) {
        throw DomainError("asm boundary refinement needs r <= 1/2");
    }
    const long k = static_cast<long>(std::floor(r * static_cast<double>(n)));
    if (n < 1 || k < 1) {
        throw IndexRange("asm_rate needs floor(rn) >= 1");
    }
    return log_rational(z1out(n, k)) / static_cast<double>(n);
}

double asm_growth_rate(long n) {
    if (n < 1) {
        throw IndexRange("asm order must be >= 1");
    }
    return (log_integer(binomial(3 * n + 1, n)) -
            log_integer(binomial(2 * n, n))) /
           static_cast<double>(n);
}

double tb_tt_predicted_rate(double r1, double r2) {
    return asm_S(r1, 0.5) + asm_S(r2, 0.5);
}

}  // namespace arctic
