#include "arctic/exact.hpp"

#include <mpfr.h>

#include <cctype>
#include <cstddef>
#include <utility>

#include "arctic/errors.hpp"

namespace arctic {

ExactInteger binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (n < 0) {
        throw DomainError("binomial with negative upper index " +
                          std::to_string(n));
    }
    ExactInteger out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

ExactInteger factorial(unsigned long n) {
    ExactInteger out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

ExactRational pow_rational(const ExactRational& q, unsigned long e) {
    ExactRational out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(q.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(q.get_mpq_t()), e);
    return out;
}

double log_integer(const ExactInteger& z) {
    if (z <= 0) {
        throw DomainError("log of a nonpositive exact integer");
    }
    mpfr_t t;
    mpfr_init2(t, 128);
    mpfr_set_z(t, z.get_mpz_t(), MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    const double out = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return out;
}

double log_rational(const ExactRational& q) {
    if (q <= 0) {
        throw DomainError("log of a nonpositive exact rational");
    }
    return log_integer(ExactInteger(q.get_num())) -
           log_integer(ExactInteger(q.get_den()));
}

namespace {

// Fraction-free Bareiss elimination; destroys m.
ExactInteger bareiss(std::vector<std::vector<ExactInteger>>& m) {
    const size_t N = m.size();
    if (N == 0) return 1;
    int sign = 1;
    ExactInteger prev = 1;
    for (size_t c = 0; c + 1 < N; ++c) {
        size_t piv = c;
        while (piv < N && m[piv][c] == 0) ++piv;
        if (piv == N) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            sign = -sign;
        }
        for (size_t r = c + 1; r < N; ++r) {
            for (size_t cc = c + 1; cc < N; ++cc) {
                ExactInteger t = m[r][cc] * m[c][c] - m[r][c] * m[c][cc];
                mpz_divexact(m[r][cc].get_mpz_t(), t.get_mpz_t(),
                             prev.get_mpz_t());
            }
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    return sign > 0 ? m[N - 1][N - 1] : ExactInteger(-m[N - 1][N - 1]);
}

}  // namespace

ExactInteger determinant_integer(std::vector<std::vector<ExactInteger>> m) {
    const size_t N = m.size();
    for (const auto& row : m) {
        if (row.size() != N) {
            throw SizeCap("determinant of a non-square matrix");
        }
    }
    return bareiss(m);
}

ExactRational determinant(std::vector<std::vector<ExactRational>> m) {
    const size_t N = m.size();
    for (const auto& row : m) {
        if (row.size() != N) {
            throw SizeCap("determinant of a non-square matrix");
        }
    }
    // Scale each row to integers by the lcm of its denominators; divide the
    // accumulated scale back out at the end.
    ExactInteger scale = 1;
    std::vector<std::vector<ExactInteger>> zm(N, std::vector<ExactInteger>(N));
    for (size_t r = 0; r < N; ++r) {
        ExactInteger l = 1;
        for (size_t c = 0; c < N; ++c) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                    mpq_denref(m[r][c].get_mpq_t()));
        }
        for (size_t c = 0; c < N; ++c) {
            ExactRational v = m[r][c] * ExactRational(l);
            zm[r][c] = ExactInteger(v.get_num());
        }
        scale *= l;
    }
    ExactRational out(bareiss(zm), scale);
    out.canonicalize();
    return out;
}

std::string to_decimal_string(const ExactRational& q) {
    ExactRational c = q;
    c.canonicalize();
    return c.get_str();
}

ExactRational parse_rational(const std::string& text) {
    if (text.empty()) {
        throw ValueOutOfRange("empty rational literal");
    }
    const auto bad = [&text]() {
        return ValueOutOfRange("cannot parse rational literal '" + text + "'");
    };
    const size_t slash = text.find('/');
    const size_t dot = text.find('.');
    if (slash != std::string::npos && dot != std::string::npos) throw bad();
    try {
        if (slash != std::string::npos) {
            ExactRational q(text, 10);
            if (q.get_den() == 0) throw bad();
            q.canonicalize();
            return q;
        }
        if (dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            const size_t places = text.size() - dot - 1;
            if (digits.empty() || digits == "-" || digits == "+") throw bad();
            ExactInteger num(digits, 10);
            ExactInteger den = 1;
            mpz_ui_pow_ui(den.get_mpz_t(), 10,
                          static_cast<unsigned long>(places));
            ExactRational q(num, den);
            q.canonicalize();
            return q;
        }
        return ExactRational(ExactInteger(text, 10));
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

}  // namespace arctic
