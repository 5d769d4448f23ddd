#include "arctic/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "arctic/errors.hpp"
#include "arctic/exact_asm.hpp"
#include "arctic/exact_aztec.hpp"
#include "arctic/numeric.hpp"

namespace arctic {

namespace {

constexpr double kClosedFormStep = 1e-6;   // S' central difference
constexpr double kEnvelopeStep = 1e-4;     // dt*/dr for closed-form input
constexpr double kSecondDifferenceCap = 1e4;

}  // namespace

RateFunction RateFunction::closed_form(std::function<double(double)> f,
                                       double r_lo, double r_hi) {
    if (!(r_lo < r_hi)) {
        throw DomainError("rate function needs r_lo < r_hi");
    }
    RateFunction out;
    out.tabulated_ = false;
    out.f_ = std::move(f);
    out.r_lo_ = r_lo;
    out.r_hi_ = r_hi;
    return out;
}

RateFunction RateFunction::tabulated(std::vector<double> r,
                                     std::vector<double> S) {
    if (r.size() != S.size()) {
        throw SizeCap("rate table needs matching abscissa/value lengths");
    }
    if (r.size() < 10) {
        throw EdgeOfTable("rate table needs at least 10 samples, got " +
                          std::to_string(r.size()));
    }
    for (size_t i = 0; i < r.size(); ++i) {
        if (!std::isfinite(r[i]) || !std::isfinite(S[i])) {
            throw ValueOutOfRange("rate table contains a non-finite entry");
        }
        if (i > 0 && !(r[i - 1] < r[i])) {
            throw IndexOrder("rate table abscissae must be strictly increasing");
        }
    }
    // Differentiability guard: second divided differences must stay bounded
    // (a staircase or jump in the data makes the quadratic fits meaningless).
    for (size_t i = 1; i + 1 < r.size(); ++i) {
        const double h1 = r[i] - r[i - 1];
        const double h2 = r[i + 1] - r[i];
        const double second =
            2.0 *
            ((S[i + 1] - S[i]) / h2 - (S[i] - S[i - 1]) / h1) / (h1 + h2);
        if (!(std::abs(second) <= kSecondDifferenceCap)) {
            throw ValueOutOfRange(
                "rate table fails the bounded-second-difference check at r = " +
                std::to_string(r[i]));
        }
    }
    RateFunction out;
    out.tabulated_ = true;
    out.r_ = std::move(r);
    out.s_ = std::move(S);
    out.r_lo_ = out.r_.front();
    out.r_hi_ = out.r_.back();
    return out;
}

double RateFunction::derivative(double r) const {
    if (!tabulated_) {
        const double h = kClosedFormStep;
        if (!(r - h > r_lo_ && r + h < r_hi_)) {
            throw EdgeOfTable("closed-form rate derivative needs r in (" +
                              std::to_string(r_lo_) + ", " +
                              std::to_string(r_hi_) + ") with margin");
        }
        return (f_(r + h) - f_(r - h)) / (2.0 * h);
    }
    if (!(r >= r_lo_ && r <= r_hi_)) {
        throw EdgeOfTable("tabulated rate derivative outside the table range");
    }
    const auto it = std::lower_bound(r_.begin(), r_.end(), r);
    int i = static_cast<int>(it - r_.begin());
    if (i > 0 &&
        (i == static_cast<int>(r_.size()) ||
         std::abs(r_[static_cast<size_t>(i) - 1] - r) <
             std::abs(r_[static_cast<size_t>(i)] - r))) {
        --i;
    }
    return quadratic_fit_derivative_at(r_.data(), s_.data(),
                                       static_cast<int>(r_.size()), i, r);
}

TangentFrame TangentFrame::vertical() { return TangentFrame{0.0, 0.0, 0.0, 1.0}; }

TangentFrame TangentFrame::aztec_corner() {
    return TangentFrame{-1.0, 0.0, -1.0, 1.0};
}

namespace {

// Transversality residual as a function of the candidate slope:
//   g(t) = -a L(t) + (b - a t) log y(t) - S'(r),
// zero exactly when the tangent line through the moving endpoint is
// stationary under r at the touching point.
double frame_relation(const StepSet& L, const TangentFrame& frame, double t,
                      double sprime) {
    const LagrangeanEval ev = lagrangean(L, t);
    return -frame.vel_x * ev.L +
           (frame.vel_y - frame.vel_x * t) * (-ev.Lprime) - sprime;
}

double solve_frame_slope(const StepSet& L, const TangentFrame& frame,
                         double sprime) {
    if (frame.vel_x == 0.0) {
        if (frame.vel_y == 0.0) {
            throw DegenerateEnvelope("tangent frame with zero velocity");
        }
        // b log y(t*) = S'  =>  L'(t*) = -S'/b.
        return invert_Lprime(L, -sprime / frame.vel_y);
    }
    const int budget = settings().iteration_budget;
    const double t_lo = L.slope_min();
    const double t_hi = L.slope_max();
    const double mid =
        std::isinf(t_lo) || std::isinf(t_hi)
            ? (std::isinf(t_lo) && std::isinf(t_hi)
                   ? 0.0
                   : (std::isinf(t_lo) ? t_hi - 1.0 : t_lo + 1.0))
            : 0.5 * (t_lo + t_hi);
    // Establish the monotonicity direction from two interior probes, then
    // bracket toward the ends like invert_Lprime.
    const double q = std::isinf(t_lo) || std::isinf(t_hi) ? 1.0
                                                          : 0.25 * (t_hi - t_lo);
    const double g_a = frame_relation(L, frame, mid - 0.5 * q, sprime);
    const double g_b = frame_relation(L, frame, mid + 0.5 * q, sprime);
    const double dir = g_b >= g_a ? 1.0 : -1.0;  // +1: increasing in t
    auto probe = [&](double side) {
        // side -1: seek g*dir < 0; side +1: seek g*dir > 0.
        double k = 1.0;
        const double end = side < 0.0 ? t_lo : t_hi;
        for (int it = 0; it <= budget; ++it) {
            const double e = std::isinf(end) ? mid + side * k
                                             : end - (end - mid) / (2.0 * k);
            const double val = dir * frame_relation(L, frame, e, sprime);
            if ((side < 0.0 && val < 0.0) || (side > 0.0 && val > 0.0)) {
                return e;
            }
            k *= 2.0;
        }
        throw ValueOutOfRange(
            "tangent frame relation has no root in the slope domain");
    };
    double lo = probe(-1.0);
    double hi = probe(+1.0);
    for (int k = 0; k < budget; ++k) {
        const double m = 0.5 * (lo + hi);
        if (dir * frame_relation(L, frame, m, sprime) < 0.0) {
            lo = m;
        } else {
            hi = m;
        }
        if (hi - lo < 1e-15 * std::max(1.0, std::abs(m))) break;
    }
    return 0.5 * (lo + hi);
}

ParametricCurve::Sample envelope_point(const TangentFrame& frame, double r,
                                       double t_star, double dtdr) {
    if (!(std::abs(dtdr) >= settings().envelope_degeneracy)) {
        throw DegenerateEnvelope("dt*/dr vanishes at r = " + std::to_string(r));
    }
    const double ax = frame.origin_x + r * frame.vel_x;
    const double ay = frame.origin_y + r * frame.vel_y;
    const double x = ax - (frame.vel_y - frame.vel_x * t_star) / dtdr;
    const double y = t_star * (x - ax) + ay;
    // Stored parameter is the tangent line's y-intercept, which keeps the
    // sample on the line y = t_star x + r for every frame.
    return ParametricCurve::Sample{y - t_star * x, t_star, x, y};
}

}  // namespace

double slope_from_S(const RateFunction& S, double r, const StepSet& L,
                    const TangentFrame& frame) {
    return solve_frame_slope(L, frame, S.derivative(r));
}

ParametricCurve envelope(const RateFunction& S, const StepSet& L,
                         const std::vector<double>& r_grid,
                         const TangentFrame& frame) {
    if (r_grid.size() < 3 ||
        !std::is_sorted(r_grid.begin(), r_grid.end())) {
        throw IndexOrder("envelope grid must be sorted with >= 3 points");
    }
    ParametricCurve out;
    if (!S.is_tabulated()) {
        out.samples.reserve(r_grid.size());
        for (double r : r_grid) {
            const double hh = kEnvelopeStep;
            const double t0 = slope_from_S(S, r, L, frame);
            const double tp = slope_from_S(S, r + hh, L, frame);
            const double tm = slope_from_S(S, r - hh, L, frame);
            out.samples.push_back(
                envelope_point(frame, r, t0, (tp - tm) / (2.0 * hh)));
        }
        return out;
    }
    std::vector<double> tst(r_grid.size());
    for (size_t i = 0; i < r_grid.size(); ++i) {
        tst[i] = slope_from_S(S, r_grid[i], L, frame);
    }
    out.samples.reserve(r_grid.size() - 2);
    for (size_t i = 1; i + 1 < r_grid.size(); ++i) {
        const double dtdr =
            (tst[i + 1] - tst[i - 1]) / (r_grid[i + 1] - r_grid[i - 1]);
        out.samples.push_back(envelope_point(frame, r_grid[i], tst[i], dtdr));
    }
    return out;
}

ParametricCurve reconstruct_from_lattice(const std::string& model, long n,
                                         const std::vector<double>& r_grid,
                                         double w) {
    if (model != "asm" && model != "aztec") {
        throw DomainError("unknown model '" + model + "'");
    }
    if (n < 1) {
        throw IndexRange("lattice order must be >= 1");
    }
    // Snap the requested grid to exact lattice fractions k/n (deduplicated),
    // so the tabulated rate never staircases.
    std::set<long> kset;
    for (double r : r_grid) {
        const long k = std::lround(r * static_cast<double>(n));
        if (k >= 1 && (model == "aztec" || k <= n + 1)) kset.insert(k);
    }
    std::vector<double> rs, Ss;
    rs.reserve(kset.size());
    Ss.reserve(kset.size());
    if (model == "asm") {
        for (long k : kset) {
            rs.push_back(static_cast<double>(k) / static_cast<double>(n));
            Ss.push_back(log_rational(z1out(n, k)) / static_cast<double>(n));
        }
    } else {
        const WeightParam wp{ExactRational(w)};
        for (long k : kset) {
            rs.push_back(static_cast<double>(k) / static_cast<double>(n));
            Ss.push_back(log_rational(g_entry(n, k, 1, wp)) /
                         static_cast<double>(n));
        }
    }
    const RateFunction S = RateFunction::tabulated(rs, Ss);
    // Trim one point per side here; the tabulated envelope drops one more for
    // its central differences, so the emitted curve sits two points inside.
    const std::vector<double> inner(rs.begin() + 1, rs.end() - 1);
    const StepSet steps =
        model == "asm" ? StepSet::asm_paths() : StepSet::aztec(w);
    const TangentFrame frame = model == "asm" ? TangentFrame::vertical()
                                              : TangentFrame::aztec_corner();
    return envelope(S, steps, inner, frame);
}

}  // namespace arctic
