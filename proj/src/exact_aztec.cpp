#include "arctic/exact_aztec.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "arctic/errors.hpp"
#include "arctic/numeric.hpp"

namespace arctic {

WeightParam::WeightParam(ExactRational value) : w(std::move(value)) {
    w.canonicalize();
    if (w <= 0) {
        throw ValueOutOfRange("lattice weight w must be positive, got " +
                              w.get_str());
    }
}

RefinementSpec::RefinementSpec(std::vector<long> k, std::vector<long> l)
    : kvec(std::move(k)), lvec(std::move(l)) {
    if (kvec.size() != lvec.size()) {
        throw SizeCap("refinement needs equally many k and l displacements");
    }
    for (const std::vector<long>* v : {&kvec, &lvec}) {
        for (size_t i = 0; i < v->size(); ++i) {
            if ((*v)[i] < 1) {
                throw IndexRange("displacements must be >= 1, got " +
                                 std::to_string((*v)[i]));
            }
            if (i > 0 && (*v)[i - 1] >= (*v)[i]) {
                throw IndexOrder("displacements must be strictly increasing");
            }
        }
    }
}

ExactRational trinomial_entry(long i, long j, const WeightParam& w) {
    if (i < 0 || j < 0) {
        throw IndexRange("trinomial indices must be nonnegative");
    }
    // (i+j-p)! / ((i-p)!(j-p)!p!) = C(i+j-p, p) C(i+j-2p, i-p)
    ExactRational sum = 0;
    for (long p = 0; p <= std::min(i, j); ++p) {
        sum += pow_rational(w.w, static_cast<unsigned long>(p)) *
               ExactRational(binomial(i + j - p, p) *
                             binomial(i + j - 2 * p, i - p));
    }
    return sum;
}

ExactInteger lu_entry_L(long i, long j) {
    if (i < j || j < 0) {
        throw IndexOrder("L is lower triangular: needs i >= j >= 0");
    }
    return binomial(i, j);
}

ExactRational lu_entry_U(long i, long j, const WeightParam& w) {
    if (i > j || i < 0) {
        throw IndexOrder("U is upper triangular: needs 0 <= i <= j");
    }
    return pow_rational(ExactRational(1) + w.w,
                        static_cast<unsigned long>(i)) *
           ExactRational(binomial(j, i));
}

ExactRational unrefined_Z(long n, const WeightParam& w) {
    if (n < 0) {
        throw IndexRange("diamond order must be nonnegative");
    }
    return pow_rational(ExactRational(1) + w.w,
                        static_cast<unsigned long>(n) * (n + 1) / 2);
}

ExactRational g_entry(long n, long k, long l, const WeightParam& w) {
    if (n < 0 || k < 1 || l < 1) {
        throw IndexRange("g entry needs n >= 0 and k, l >= 1");
    }
    const long jmax = std::min(k, l);
    const ExactRational opw = ExactRational(1) + w.w;
    // Running values of C(n+k, n+j), C(n+l, n+j), (1+w)^{n+j}, updated by one
    // ratio per term instead of recomputed (or cached) factorials.
    ExactInteger ck = binomial(n + k, n + 1);
    ExactInteger cl = binomial(n + l, n + 1);
    ExactRational pw = pow_rational(opw, static_cast<unsigned long>(n) + 1);
    ExactRational sum = 0;
    for (long j = 1; j <= jmax; ++j) {
        if (j > 1) {
            ck *= k - j + 1;
            mpz_divexact_ui(ck.get_mpz_t(), ck.get_mpz_t(),
                            static_cast<unsigned long>(n + j));
            cl *= l - j + 1;
            mpz_divexact_ui(cl.get_mpz_t(), cl.get_mpz_t(),
                            static_cast<unsigned long>(n + j));
            pw *= opw;
        }
        sum += pw * ExactRational(ck * cl);
    }
    return sum;
}

GMatrix g_matrix(long n, const RefinementSpec& spec, const WeightParam& w) {
    const size_t m = spec.m();
    GMatrix out{n, spec, {}};
    out.entries.assign(m, std::vector<ExactRational>(m));
    for (size_t a = 0; a < m; ++a) {
        for (size_t b = 0; b < m; ++b) {
            out.entries[a][b] = g_entry(n, spec.kvec[a], spec.lvec[b], w);
        }
    }
    return out;
}

ExactRational multirefined_ratio(long n, const RefinementSpec& spec,
                                 const WeightParam& w) {
    if (spec.m() == 0) return 1;
    return determinant(g_matrix(n, spec, w).entries);
}

ExactRational lgv_oracle(long n, const RefinementSpec& spec,
                         const WeightParam& w) {
    if (n < 0) {
        throw IndexRange("diamond order must be nonnegative");
    }
    const long total = n + static_cast<long>(spec.m());
    if (total > settings().lgv_cap) {
        throw CapExceeded("lgv oracle capped at n+m <= " +
                          std::to_string(settings().lgv_cap) + ", got " +
                          std::to_string(total));
    }
    std::vector<long> rows, cols;
    for (long i = 0; i <= n; ++i) rows.push_back(i);
    for (long k : spec.kvec) rows.push_back(n + k);
    for (long j = 0; j <= n; ++j) cols.push_back(j);
    for (long l : spec.lvec) cols.push_back(n + l);
    const size_t N = rows.size();
    std::vector<std::vector<ExactRational>> m(N,
                                              std::vector<ExactRational>(N));
    for (size_t a = 0; a < N; ++a) {
        for (size_t b = 0; b < N; ++b) {
            m[a][b] = trinomial_entry(rows[a], cols[b], w);
        }
    }
    return determinant(std::move(m));
}

namespace {

// One candidate realization of a single path: the vertices it occupies and
// how many level steps it uses.
struct PathOption {
    std::vector<std::pair<long, long>> verts;
    int levels;
};

void enumerate_paths(std::pair<long, long> pos, std::pair<long, long> goal,
                     std::vector<std::pair<long, long>>& verts, int levels,
                     std::vector<PathOption>& out) {
    if (pos == goal) {
        out.push_back(PathOption{verts, levels});
        return;
    }
    static constexpr int kSteps[3][3] = {{1, 1, 0}, {1, -1, 0}, {2, 0, 1}};
    for (const auto& st : kSteps) {
        const long nx = pos.first + st[0];
        const long ny = pos.second + st[1];
        // Remaining displacement must stay reachable: |dy| <= dx.
        if (goal.first - nx >= std::labs(goal.second - ny)) {
            verts.emplace_back(nx, ny);
            enumerate_paths({nx, ny}, goal, verts, levels + st[2], out);
            verts.pop_back();
        }
    }
}

}  // namespace

ExactRational brute_force_paths(long n, const RefinementSpec& spec,
                                const WeightParam& w) {
    if (n < 0) {
        throw IndexRange("diamond order must be nonnegative");
    }
    const long total = n + static_cast<long>(spec.m());
    if (total > settings().brute_cap) {
        throw CapExceeded("brute-force oracle capped at n+m <= " +
                          std::to_string(settings().brute_cap) + ", got " +
                          std::to_string(total));
    }
    std::vector<long> rows, cols;
    for (long i = 0; i <= n; ++i) rows.push_back(i);
    for (long k : spec.kvec) rows.push_back(n + k);
    for (long j = 0; j <= n; ++j) cols.push_back(j);
    for (long l : spec.lvec) cols.push_back(n + l);
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());

    std::vector<std::vector<PathOption>> candidates;
    for (size_t a = 0; a < rows.size(); ++a) {
        std::vector<PathOption> opts;
        std::vector<std::pair<long, long>> verts{{-rows[a], -rows[a]}};
        enumerate_paths({-rows[a], -rows[a]}, {cols[a], -cols[a]}, verts, 0,
                        opts);
        candidates.push_back(std::move(opts));
    }

    ExactRational sum = 0;
    std::set<std::pair<long, long>> used;
    auto rec = [&](auto&& self, size_t idx, int levels) -> void {
        if (idx == candidates.size()) {
            sum += pow_rational(w.w, static_cast<unsigned long>(levels));
            return;
        }
        for (const PathOption& opt : candidates[idx]) {
            bool clash = false;
            for (const auto& v : opt.verts) {
                if (used.count(v) != 0) {
                    clash = true;
                    break;
                }
            }
            if (clash) continue;
            for (const auto& v : opt.verts) used.insert(v);
            self(self, idx + 1, levels + opt.levels);
            for (const auto& v : opt.verts) used.erase(v);
        }
    };
    rec(rec, 0, 0);
    return sum;
}

double aztec_rate(long n, double r, double s, const WeightParam& w) {
    const long k = static_cast<long>(std::floor(r * static_cast<double>(n)));
    const long l = static_cast<long>(std::floor(s * static_cast<double>(n)));
    if (n < 1 || k < 1 || l < 1) {
        throw IndexRange("aztec_rate needs floor(rn) >= 1 and floor(sn) >= 1");
    }
    return log_rational(g_entry(n, k, l, w)) / static_cast<double>(n);
}

double multirefined_rate(long n, const std::vector<double>& rvec,
                         const std::vector<double>& svec,
                         const WeightParam& w) {
    std::vector<long> kv, lv;
    kv.reserve(rvec.size());
    lv.reserve(svec.size());
    for (double r : rvec) {
        kv.push_back(static_cast<long>(std::floor(r * static_cast<double>(n))));
    }
    for (double s : svec) {
        lv.push_back(static_cast<long>(std::floor(s * static_cast<double>(n))));
    }
    const RefinementSpec spec(kv, lv);
    return log_rational(multirefined_ratio(n, spec, w)) /
           static_cast<double>(n);
}

}  // namespace arctic
