#include "arctic/step_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "arctic/errors.hpp"
#include "arctic/numeric.hpp"

namespace arctic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double base, int e) {
    if (e == 0) return 1.0;
    if (e < 0) return 1.0 / ipow(base, -e);
    double out = 1.0;
    double b = base;
    while (e > 0) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

}  // namespace

StepSet::StepSet(std::vector<Step> steps, std::string label)
    : steps_(std::move(steps)), label_(std::move(label)) {
    if (steps_.empty()) {
        throw DomainError("step set must be nonempty");
    }
    bool any_forward = false;
    t_min_ = kInf;
    t_max_ = -kInf;
    for (size_t i = 0; i < steps_.size(); ++i) {
        const Step& s = steps_[i];
        if (s.u < 0) {
            throw DomainError("step with u < 0 violates directedness");
        }
        if (s.u == 0 && s.v == 0) {
            throw DomainError("null step (0,0) is not allowed");
        }
        if (!(s.weight > 0.0)) {
            throw DomainError("step weight must be positive");
        }
        for (size_t j = 0; j < i; ++j) {
            if (steps_[j].u == s.u && steps_[j].v == s.v) {
                throw DomainError("duplicate step (" + std::to_string(s.u) +
                                  "," + std::to_string(s.v) + ")");
            }
        }
        const double slope =
            s.u > 0 ? static_cast<double>(s.v) / s.u
                    : std::copysign(kInf, static_cast<double>(s.v));
        any_forward = any_forward || s.u > 0;
        t_min_ = std::min(t_min_, slope);
        t_max_ = std::max(t_max_, slope);
    }
    if (!any_forward) {
        throw DomainError("step set needs at least one step with u > 0");
    }
    if (!(t_min_ < t_max_)) {
        throw DomainError("degenerate slope domain: all steps share one slope");
    }
}

StepSet StepSet::aztec(double w) {
    if (!(w > 0.0)) {
        throw DomainError("aztec step weight w must be positive");
    }
    return StepSet({{1, 1, 1.0}, {1, -1, 1.0}, {2, 0, w}}, "aztec");
}

StepSet StepSet::asm_paths() {
    return StepSet({{1, 0, 1.0}, {0, -1, 1.0}}, "asm");
}

StepSet StepSet::sixvertex(double w1, double w2) {
    if (!(w1 > 0.0) || !(w2 > 0.0)) {
        throw DomainError("sixvertex weights must be positive");
    }
    return StepSet({{1, 0, w1}, {0, -1, w2}}, "sixvertex");
}

double StepSet::P(double x, double y) const {
    double out = 0.0;
    for (const Step& s : steps_) out += s.weight * ipow(x, s.u) * ipow(y, s.v);
    return out;
}

double StepSet::x_dPdx(double x, double y) const {
    double out = 0.0;
    for (const Step& s : steps_) {
        out += s.weight * s.u * ipow(x, s.u) * ipow(y, s.v);
    }
    return out;
}

double StepSet::y_dPdy(double x, double y) const {
    double out = 0.0;
    for (const Step& s : steps_) {
        out += s.weight * s.v * ipow(x, s.u) * ipow(y, s.v);
    }
    return out;
}

std::vector<Monomial> char_polynomial(const StepSet& s) {
    std::vector<Monomial> out;
    out.reserve(s.steps().size());
    for (const Step& st : s.steps()) {
        out.push_back(Monomial{st.weight, st.u, st.v});
    }
    return out;
}

namespace {

// The solver works on Q(xi, eta) = P(e^xi, e^eta) = sum w e^{u xi + v eta},
// which is convex with positive partials in xi. Given eta, Q = 1 has a unique
// root in xi; along that root curve the slope (y dP/dy)/(x dP/dx) is strictly
// increasing in eta, so the outer problem is a monotone bisection.
struct ExpSolver {
    const std::vector<Step>& steps;
    int budget;

    // Sum over the u = 0 steps only (the part of Q independent of xi).
    double B(double eta) const {
        double out = 0.0;
        for (const Step& s : steps) {
            if (s.u == 0) out += s.weight * std::exp(s.v * eta);
        }
        return out;
    }
    double dB(double eta) const {
        double out = 0.0;
        for (const Step& s : steps) {
            if (s.u == 0) out += s.weight * s.v * std::exp(s.v * eta);
        }
        return out;
    }

    double A(double xi, double eta) const {
        double out = 0.0;
        for (const Step& s : steps) {
            if (s.u > 0) out += s.weight * std::exp(s.u * xi + s.v * eta);
        }
        return out;
    }
    double dA(double xi, double eta) const {
        double out = 0.0;
        for (const Step& s : steps) {
            if (s.u > 0) out += s.weight * s.u * std::exp(s.u * xi + s.v * eta);
        }
        return out;
    }

    // Root of A(xi) = 1 - B(eta): Newton safeguarded by a bisection bracket.
    double inner_xi(double eta) const {
        const double target = 1.0 - B(eta);
        double lo = -1.0, hi = 1.0;
        int it = 0;
        while (A(lo, eta) > target) {
            lo = 2.0 * lo - 1.0;
            if (++it > budget) throw NoConvergence("inner bracket (down)");
        }
        it = 0;
        while (A(hi, eta) < target) {
            hi = 2.0 * hi + 1.0;
            if (++it > budget) throw NoConvergence("inner bracket (up)");
        }
        double xi = 0.5 * (lo + hi);
        for (int k = 0; k < budget; ++k) {
            const double a = A(xi, eta);
            const double da = dA(xi, eta);
            if (a > target) {
                hi = xi;
            } else {
                lo = xi;
            }
            double nxt = da > 0.0 ? xi - (a - target) / da : 0.5 * (lo + hi);
            if (!(lo < nxt && nxt < hi)) nxt = 0.5 * (lo + hi);
            if (std::abs(nxt - xi) < 1e-16 * std::max(1.0, std::abs(xi))) {
                return nxt;
            }
            xi = nxt;
        }
        return xi;
    }

    double slope_of(double eta) const {
        const double xi = inner_xi(eta);
        double num = 0.0, den = 0.0;
        for (const Step& s : steps) {
            const double e = s.weight * std::exp(s.u * xi + s.v * eta);
            num += s.v * e;
            den += s.u * e;
        }
        return num / den;
    }
};

}  // namespace

SlopeSolution solve_xy(const StepSet& s, double t) {
    if (!s.contains_slope(t)) {
        throw SlopeOutOfDomain("slope " + std::to_string(t) +
                               " outside the open domain (" +
                               std::to_string(s.slope_min()) + ", " +
                               std::to_string(s.slope_max()) + ") of " +
                               s.label());
    }
    const int budget = settings().iteration_budget;
    ExpSolver solver{s.steps(), budget};

    // Feasible eta interval: where B(eta) < 1 (B is the u = 0 part of Q, a
    // convex function of eta). Endpoints are the roots of B = 1, or infinite
    // on a side where B decays.
    bool vneg = false, vpos = false, any_u0 = false;
    for (const Step& st : s.steps()) {
        if (st.u == 0) {
            any_u0 = true;
            vneg = vneg || st.v < 0;
            vpos = vpos || st.v > 0;
        }
    }
    double eta0 = 0.0;
    double etaL = -kInf, etaR = kInf;
    if (any_u0) {
        if (vneg && vpos) {
            // B is a strictly convex sum of both-signed exponentials; start
            // from its minimizer.
            double lo = -1.0, hi = 1.0;
            int it = 0;
            while (solver.dB(lo) > 0.0) {
                lo = 2.0 * lo - 1.0;
                if (++it > budget) throw NoConvergence("B minimizer (down)");
            }
            it = 0;
            while (solver.dB(hi) < 0.0) {
                hi = 2.0 * hi + 1.0;
                if (++it > budget) throw NoConvergence("B minimizer (up)");
            }
            for (int k = 0; k < budget; ++k) {
                const double m = 0.5 * (lo + hi);
                if (solver.dB(m) < 0.0) {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            eta0 = 0.5 * (lo + hi);
        } else {
            // B is monotone; walk toward its decaying side.
            eta0 = vneg ? 1.0 : -1.0;
            int it = 0;
            while (solver.B(eta0) >= 1.0) {
                eta0 *= 2.0;
                if (++it > budget) throw NoConvergence("feasible eta probe");
            }
        }
        if (solver.B(eta0) >= 1.0) {
            throw SlopeOutOfDomain("empty feasible region: the u = 0 steps of " +
                                   s.label() + " already exhaust P = 1");
        }
        auto bound = [&](double side) {
            if (side < 0.0 && !vneg) return -kInf;
            if (side > 0.0 && !vpos) return kInf;
            double a = eta0, b = eta0 + side;
            int it2 = 0;
            while (solver.B(b) < 1.0) {
                const double step = 2.0 * (b - eta0);
                a = b;
                b = eta0 + step;
                if (++it2 > budget) throw NoConvergence("feasible eta bound");
            }
            for (int k = 0; k < budget; ++k) {
                const double m = 0.5 * (a + b);
                if (solver.B(m) < 1.0) {
                    a = m;
                } else {
                    b = m;
                }
            }
            return 0.5 * (a + b);
        };
        etaL = bound(-1.0);
        etaR = bound(+1.0);
    }

    // Bracket the target slope by probing geometrically toward the ends of
    // the feasible interval, then bisect (the slope is strictly increasing).
    auto probe = [&](double dir) {
        double k = 1.0;
        const double end = dir < 0.0 ? etaL : etaR;
        for (int it = 0; it <= budget; ++it) {
            double e;
            if (std::isinf(end)) {
                e = eta0 + dir * k;
            } else {
                e = end - dir * (dir < 0.0 ? eta0 - end : end - eta0) / (2.0 * k);
            }
            const double sl = solver.slope_of(e);
            if ((dir < 0.0 && sl < t) || (dir > 0.0 && sl > t)) return e;
            k *= 2.0;
        }
        throw NoConvergence("slope bracket probe toward " +
                            std::string(dir < 0.0 ? "t_min" : "t_max"));
    };
    double lo = probe(-1.0);
    double hi = probe(+1.0);
    double eta = 0.5 * (lo + hi);
    for (int k = 0; k < budget; ++k) {
        eta = 0.5 * (lo + hi);
        if (solver.slope_of(eta) < t) {
            lo = eta;
        } else {
            hi = eta;
        }
        if (hi - lo < 1e-15 * std::max(1.0, std::abs(eta))) break;
    }
    eta = 0.5 * (lo + hi);
    const double xi = solver.inner_xi(eta);
    return SlopeSolution{t, std::exp(xi), std::exp(eta)};
}

LagrangeanEval lagrangean(const StepSet& s, double t) {
    const SlopeSolution sol = solve_xy(s, t);
    const double logy = std::log(sol.y);
    return LagrangeanEval{t, -std::log(sol.x) - t * logy, -logy};
}

double invert_Lprime(const StepSet& s, double v) {
    const int budget = settings().iteration_budget;
    const double t_lo = s.slope_min();
    const double t_hi = s.slope_max();
    // Reference interior point and span for the probes.
    const double mid = std::isinf(t_lo) || std::isinf(t_hi)
                           ? (std::isinf(t_lo) && std::isinf(t_hi)
                                  ? 0.0
                                  : (std::isinf(t_lo) ? t_hi - 1.0 : t_lo + 1.0))
                           : 0.5 * (t_lo + t_hi);
    auto lp = [&](double t) { return lagrangean(s, t).Lprime; };

    // L' is strictly decreasing, so look for lp > v toward t_lo and lp < v
    // toward t_hi; failure to find either means v is outside the range.
    auto probe = [&](double dir) {
        double k = 1.0;
        const double end = dir < 0.0 ? t_lo : t_hi;
        for (int it = 0; it <= budget; ++it) {
            const double e = std::isinf(end)
                                 ? mid + dir * k
                                 : end - (end - mid) / (2.0 * k);
            const double val = lp(e);
            if ((dir < 0.0 && val > v) || (dir > 0.0 && val < v)) return e;
            k *= 2.0;
        }
        throw ValueOutOfRange("invert_Lprime: value " + std::to_string(v) +
                              " is not attained by L' on " + s.label());
    };
    double lo = probe(-1.0);
    double hi = probe(+1.0);
    for (int k = 0; k < budget; ++k) {
        const double m = 0.5 * (lo + hi);
        if (lp(m) > v) {
            lo = m;
        } else {
            hi = m;
        }
        if (hi - lo < 1e-15 * std::max(1.0, std::abs(m))) break;
    }
    return 0.5 * (lo + hi);
}

ExactRational sixvertex_exact_Zpq(long p, long q, const ExactRational& w1,
                                  const ExactRational& w2) {
    if (p < 0 || q > 0) {
        throw DomainError("sixvertex_exact_Zpq needs p >= 0 >= q");
    }
    const ExactRational tau = w2 / w1;
    const long lmax = std::min(p, -q);
    ExactRational sum = 0;
    for (long l = 0; l <= lmax; ++l) {
        sum += ExactRational(binomial(p, l) * binomial(-q, l)) *
               pow_rational(tau, static_cast<unsigned long>(2 * l + 1));
    }
    return pow_rational(w1, static_cast<unsigned long>(p - q + 1)) * sum;
}

}  // namespace arctic
