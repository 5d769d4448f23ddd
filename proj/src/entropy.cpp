#include "arctic/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "arctic/errors.hpp"
#include "arctic/numeric.hpp"

namespace arctic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_aztec_params(double r, double s, double w) {
    if (!(r >= 0.0) || !(s >= 0.0)) {
        throw DomainError("aztec refinement parameters must be nonnegative");
    }
    if (!(w > -1.0)) {
        throw DomainError("aztec weight parameter must exceed -1");
    }
}

void require_asm_params(double r, double s) {
    if (!(r >= 0.0 && r <= 0.5 && s >= 0.0 && s <= 0.5)) {
        throw DomainError("asm refinement parameters must lie in [0, 1/2]");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Lagrangean closed forms.
// ---------------------------------------------------------------------------

void aztec_xy(double t, double w, double& x, double& y) {
    const double s1w = std::sqrt(1.0 + w);
    const double s1wt2 = std::sqrt(1.0 + w * t * t);
    const double s1t2 = std::sqrt(1.0 - t * t);
    x = s1t2 / (s1w + s1wt2);
    // The printed numerator sqrt(1+wt^2) - t sqrt(1+w) cancels badly for
    // t -> 1; rationalize on the positive side.
    y = t >= 0.0 ? (t * s1w + s1wt2) / s1t2 : s1t2 / (s1wt2 - t * s1w);
}

double aztec_L(double t, double w) {
    if (std::abs(t) >= 1.0) return 0.0;
    double x, y;
    aztec_xy(t, w, x, y);
    return -std::log(x) - t * std::log(y);
}

double asm_L(double t) {
    if (t == 0.0 || std::isinf(t)) return 0.0;
    return (1.0 - t) * std::log(1.0 - t) + t * std::log(-t);
}

double sixvertex_lagrangean(double t, double w1, double w2) {
    if (t > 0.0) {
        throw SlopeOutOfDomain("sixvertex lagrangean needs t <= 0");
    }
    if (!(w1 > 0.0) || !(w2 > 0.0)) {
        throw DomainError("sixvertex weights must be positive");
    }
    const double tau = w2 / w1;
    const double w = tau * tau - 1.0;
    if (std::isinf(t)) return 0.0;
    return (1.0 - t) * (std::log(w1) + aztec_L((1.0 + t) / (1.0 - t), w));
}

// ---------------------------------------------------------------------------
// Entropy surfaces.
// ---------------------------------------------------------------------------

double aztec_S(double r, double s, double w) {
    require_aztec_params(r, s, w);
    if (r * s * (1.0 + w) <= 1.0) {
        return (xlogx(r + 1.0) - xlogx(r)) + (xlogx(s + 1.0) - xlogx(s)) +
               std::log(1.0 + w);
    }
    const double t = (s - r) / (r + s + 2.0);
    return (r + s + 2.0) * aztec_L(t, w);
}

double asm_S(double r, double s) {
    require_asm_params(r, s);
    if (2.0 * r + 2.0 * s - r * s <= 1.0) {
        return xlogx(r + s) - xlogx(r) - xlogx(s);
    }
    auto half = [](double u) {
        return xlogx(1.0 + u) - xlogx(u) + xlogx(2.0 - u) - xlogx(1.0 - u);
    };
    return half(r) + half(s) - 3.0 * std::log(3.0);
}

double EntropySurface::value(double r, double s) const {
    return model == "aztec" ? aztec_S(r, s, w) : asm_S(r, s);
}

bool EntropySurface::lower_branch(double r, double s) const {
    return model == "aztec" ? r * s * (1.0 + w) <= 1.0
                            : 2.0 * r + 2.0 * s - r * s <= 1.0;
}

EntropySurface entropy_surface(const std::string& model, double w) {
    if (model != "aztec" && model != "asm") {
        throw DomainError("unknown model '" + model + "'");
    }
    return EntropySurface{model, w};
}

// ---------------------------------------------------------------------------
// Arctic curves.
// ---------------------------------------------------------------------------

double ArcticCurve::h(double x) const {
    if (model == "aztec") {
        return std::sqrt(std::max(0.0, 1.0 / (1.0 + w) - x * x / w));
    }
    return 0.5 * (1.0 + x - std::sqrt(3.0 * x * (2.0 - x)));
}

double ArcticCurve::hprime(double x) const {
    if (model == "aztec") {
        return -x / (w * h(x));
    }
    return 0.5 * (1.0 - std::sqrt(3.0) * (1.0 - x) / std::sqrt(x * (2.0 - x)));
}

double ArcticCurve::residual(double x, double y) const {
    if (model == "aztec") {
        return x * x / w + y * y - 1.0 / (1.0 + w);
    }
    return x * (1.0 - x) + y * (1.0 - y) + x * y - 0.25;
}

ArcticCurve aztec_curve(double w) {
    if (!(w > -1.0)) {
        throw DomainError("aztec weight parameter must exceed -1");
    }
    const double radius = std::sqrt(w / (1.0 + w));
    return ArcticCurve{"aztec", w, -radius, radius};
}

ArcticCurve asm_curve() { return ArcticCurve{"asm", 1.0, 0.0, 0.5}; }

// ---------------------------------------------------------------------------
// Tangency geometry.
// ---------------------------------------------------------------------------

void tangency_aztec(double r, double w, double& t1, double& x1) {
    require_aztec_params(r, 0.0, w);
    t1 = (1.0 - r * r * (1.0 + w)) / (1.0 + r * (2.0 + r) * (1.0 + w));
    x1 = -w * t1 / std::sqrt((1.0 + w) * (1.0 + w * t1 * t1));
}

Tangency tangency_aztec_pair(double r, double s, double w) {
    require_aztec_params(r, s, w);
    if (r * s * (1.0 + w) > 1.0) {
        throw NoArc("chord regime: rs(1+w) > 1 leaves no arc to touch");
    }
    Tangency out;
    tangency_aztec(r, w, out.t1, out.x1);
    double t1s, x1s;
    tangency_aztec(s, w, t1s, x1s);
    out.t2 = -t1s;
    out.x2 = -x1s;
    return out;
}

namespace {

double asm_x_of_t(double t) {
    if (std::isinf(t)) return 0.0;
    return 1.0 - (1.0 - 2.0 * t) / (2.0 * std::sqrt(1.0 - t + t * t));
}

}  // namespace

Tangency tangency_asm(double r, double s) {
    require_asm_params(r, s);
    if (2.0 * r + 2.0 * s - r * s < 1.0) {
        throw NoArc("chord regime: 2r+2s-rs < 1 leaves no arc to touch");
    }
    Tangency out;
    out.t1 = r < 0.5 ? -r * (2.0 - r) / (1.0 - 2.0 * r) : -kInf;
    out.t2 = s > 0.0 ? -(1.0 - 2.0 * s) / (s * (2.0 - s)) : -kInf;
    out.x1 = asm_x_of_t(out.t1);
    out.x2 = asm_x_of_t(out.t2);
    return out;
}

// ---------------------------------------------------------------------------
// Trajectories and the action functional.
// ---------------------------------------------------------------------------

Trajectory build_trajectory_aztec(double r, double s, double w) {
    require_aztec_params(r, s, w);
    Trajectory traj;
    traj.model = "aztec";
    traj.w = w;
    traj.ax_i = -1.0 - r;
    traj.ay_i = r;
    traj.ax_f = 1.0 + s;
    traj.ay_f = s;
    if (r * s * (1.0 + w) >= 1.0) {
        traj.kind = Trajectory::Kind::straight_line;
    } else {
        traj.kind = Trajectory::Kind::tangent_arc_tangent;
        traj.tangency = tangency_aztec_pair(r, s, w);
    }
    return traj;
}

Trajectory build_trajectory_asm(double r, double s) {
    require_asm_params(r, s);
    Trajectory traj;
    traj.model = "asm";
    traj.ax_i = 0.0;
    traj.ay_i = r;
    traj.ax_f = s;
    traj.ay_f = 0.0;
    if (2.0 * r + 2.0 * s - r * s <= 1.0) {
        traj.kind = Trajectory::Kind::straight_line;
    } else {
        traj.kind = Trajectory::Kind::tangent_arc_tangent;
        traj.tangency = tangency_asm(r, s);
    }
    return traj;
}

namespace {

// Arc contribution: adaptive quadrature of x -> L(h'(x)) over [x1, x2] with
// boundary layers of width 1e-6 at both ends taken under u = sqrt(distance),
// which removes the square-root blowup of d/dx L(h'(x)) at the junctions.
// The pieces are signed integrals, so they stay exact even when the layers
// overlap (arcs shorter than 2e-6).
double arc_action(const std::function<double(double)>& f, double x1,
                  double x2) {
    const double qt = settings().quadrature_tol;
    constexpr double d = 1e-6;
    const double mid = integrate(f, x1 + d, x2 - d, qt);
    const double lo = integrate(
        [&](double u) { return 2.0 * u * f(x1 + u * u); }, 0.0, std::sqrt(d),
        qt * 0.01);
    const double hi = integrate(
        [&](double u) { return 2.0 * u * f(x2 - u * u); }, 0.0, std::sqrt(d),
        qt * 0.01);
    return mid + lo + hi;
}

double action_aztec(const Trajectory& traj) {
    const double r = traj.ay_i;
    const double s = traj.ay_f;
    const double w = traj.w;
    if (traj.kind == Trajectory::Kind::straight_line) {
        const double t = (s - r) / (r + s + 2.0);
        return (r + s + 2.0) * aztec_L(t, w);
    }
    const Tangency& tg = *traj.tangency;
    const double seg = (tg.x1 + 1.0 + r) * aztec_L(tg.t1, w) +
                       (1.0 + s - tg.x2) * aztec_L(tg.t2, w);
    const ArcticCurve curve = aztec_curve(w);
    auto f = [&](double x) { return aztec_L(curve.hprime(x), w); };
    return seg + arc_action(f, tg.x1, tg.x2);
}

double action_asm(const Trajectory& traj) {
    const double r = traj.ay_i;
    const double s = traj.ax_f;
    if (traj.kind == Trajectory::Kind::straight_line) {
        if (s == 0.0) return 0.0;  // vertical chord, zero x-extent
        return s * asm_L(-r / s);
    }
    const Tangency& tg = *traj.tangency;
    double seg = 0.0;
    if (!std::isinf(tg.t1)) seg += tg.x1 * asm_L(tg.t1);
    seg += (s - tg.x2) * asm_L(tg.t2);
    const ArcticCurve curve = asm_curve();
    auto f = [&](double x) { return asm_L(curve.hprime(x)); };
    const double qt = settings().quadrature_tol;
    constexpr double d = 1e-6;
    const double a = std::max(tg.x1, 0.0);
    const double b = tg.x2;
    if (a < d) {
        // Singular end of the parametrization: h'(x) -> -inf as x -> 0, so
        // L(h'(x)) grows like log(1/x); the sqrt substitution tames it.
        const double lo = integrate(
            [&](double u) { return u > 0.0 ? 2.0 * u * f(u * u) : 0.0; },
            std::sqrt(a), std::sqrt(d), qt * 0.01);
        return seg + lo + integrate(f, d, b, qt);
    }
    return seg + integrate(f, a, b, qt);
}

}  // namespace

double action(const Trajectory& traj) {
    if (traj.model == "aztec") return action_aztec(traj);
    if (traj.model == "asm") return action_asm(traj);
    throw DomainError("unknown trajectory model '" + traj.model + "'");
}

// ---------------------------------------------------------------------------
// Saddle analysis.
// ---------------------------------------------------------------------------

double saddle_F(double xi, double r, double s, double w) {
    require_aztec_params(r, s, w);
    if (!(xi >= 0.0 && xi <= std::min(r, s))) {
        throw ValueOutOfRange("saddle variable outside [0, min(r,s)]");
    }
    return (xi + 1.0) * std::log(1.0 + w) - 2.0 * xlogx(xi + 1.0) +
           xlogx(r + 1.0) + xlogx(s + 1.0) - xlogx(r - xi) - xlogx(s - xi);
}

double saddle_xi_star(double r, double s, double w) {
    require_aztec_params(r, s, w);
    if (r * s * (1.0 + w) <= 1.0) return 0.0;
    if (w == 0.0) {
        // The quadratic degenerates to a linear equation.
        return (r * s - 1.0) / (2.0 + r + s);
    }
    const double b = 2.0 + (r + s) * (1.0 + w);
    const double disc = b * b + 4.0 * w * (1.0 - r * s * (1.0 + w));
    return (b - std::sqrt(disc)) / (2.0 * w);
}

// ---------------------------------------------------------------------------
// Property suites.
// ---------------------------------------------------------------------------

PermutationArgmax max_permutation_action(const std::vector<double>& rvec,
                                         const std::vector<double>& svec,
                                         const std::string& model, double w) {
    const size_t m = rvec.size();
    if (m != svec.size()) {
        throw SizeCap("permutation argmax needs |rvec| = |svec|");
    }
    if (m == 0 || m > 8) {
        throw SizeCap("permutation argmax supports 1 <= m <= 8, got " +
                      std::to_string(m));
    }
    if (!std::is_sorted(rvec.begin(), rvec.end()) ||
        !std::is_sorted(svec.begin(), svec.end())) {
        throw IndexOrder("rvec and svec must be sorted nondecreasing");
    }
    const EntropySurface surf = entropy_surface(model, w);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    PermutationArgmax out;
    out.max_value = -kInf;
    std::vector<std::pair<double, std::vector<int>>> values;
    do {
        double v = 0.0;
        for (size_t a = 0; a < m; ++a) {
            v += surf.value(rvec[a], svec[static_cast<size_t>(perm[a])]);
        }
        values.emplace_back(v, perm);
        out.max_value = std::max(out.max_value, v);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double tol = 1e-12 * static_cast<double>(m);
    out.identity_in_argmax = false;
    for (auto& [v, p] : values) {
        if (v >= out.max_value - tol) {
            const bool is_identity =
                std::is_sorted(p.begin(), p.end()) && p.front() == 0;
            out.identity_in_argmax = out.identity_in_argmax || is_identity;
            out.argmax.push_back(std::move(p));
        }
    }
    return out;
}

MonotonicityReport difference_monotonicity(const std::vector<double>& r_grid,
                                           double s, double s_prime,
                                           const std::string& model, double w) {
    if (!(s > s_prime && s_prime >= 0.0)) {
        throw DomainError("monotonicity check needs s > s' >= 0");
    }
    if (r_grid.size() < 2 || !std::is_sorted(r_grid.begin(), r_grid.end())) {
        throw IndexOrder("r grid must be sorted with at least two points");
    }
    const EntropySurface surf = entropy_surface(model, w);
    // In the regime where the refinement decouples from s (the arc regime:
    // the aztec lower branch, the asm upper branch) the difference is exactly
    // constant in r; in the chord regime it is strictly increasing.
    const bool aztec = model == "aztec";
    const auto separable = [&](double rr, double ss) {
        return aztec ? surf.lower_branch(rr, ss) : !surf.lower_branch(rr, ss);
    };
    MonotonicityReport rep;
    rep.constant_in_lower_regime = true;
    rep.increasing_in_upper_regime = true;
    rep.worst_lower_drift = 0.0;
    rep.worst_upper_difference = kInf;
    bool saw_upper = false;
    for (size_t i = 0; i + 1 < r_grid.size(); ++i) {
        const double r0 = r_grid[i];
        const double r1 = r_grid[i + 1];
        const double d0 = surf.value(r0, s) - surf.value(r0, s_prime);
        const double d1 = surf.value(r1, s) - surf.value(r1, s_prime);
        const double fwd = d1 - d0;
        const bool sep = separable(r0, s) && separable(r0, s_prime) &&
                         separable(r1, s) && separable(r1, s_prime);
        const bool chord = !separable(r0, s) && !separable(r0, s_prime) &&
                           !separable(r1, s) && !separable(r1, s_prime);
        if (sep) {
            rep.worst_lower_drift =
                std::max(rep.worst_lower_drift, std::abs(fwd));
        }
        if (chord) {
            saw_upper = true;
            rep.worst_upper_difference =
                std::min(rep.worst_upper_difference, fwd);
        }
    }
    rep.constant_in_lower_regime = rep.worst_lower_drift <= 1e-10;
    rep.increasing_in_upper_regime =
        !saw_upper || rep.worst_upper_difference > 0.0;
    if (!saw_upper) rep.worst_upper_difference = 0.0;
    return rep;
}

}  // namespace arctic
