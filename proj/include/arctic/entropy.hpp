#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arctic/step_model.hpp"

namespace arctic {

// ---------------------------------------------------------------------------
// Closed forms for the two models. The aztec family is parametrized by the
// level-step weight w > -1 (w > 0 for the lattice model; the (-1, 0] range is
// reached through the six-vertex reduction).
// ---------------------------------------------------------------------------

// Stable closed forms for the positive solution (x(t), y(t)), |t| < 1:
//   x = sqrt(1-t^2) / (sqrt(1+w) + sqrt(1+w t^2))
//   y = (t sqrt(1+w) + sqrt(1+w t^2)) / sqrt(1-t^2)        for t >= 0
//   y = sqrt(1-t^2) / (sqrt(1+w t^2) - t sqrt(1+w))        for t <  0
// (the t < 0 branch avoids the cancellation the printed form suffers from).
void aztec_xy(double t, double w, double& x, double& y);
double aztec_L(double t, double w);     // exact 0 at |t| = 1
double asm_L(double t);                 // exact 0 at t = 0 and t = -inf

// Entropy surfaces. aztec_S branches on rs vs 1/(1+w), asm_S on 2r+2s-rs vs 1;
// at exactly the boundary the lower-branch formula is used (the two agree).
double aztec_S(double r, double s, double w);
double asm_S(double r, double s);       // domain [0, 1/2]^2

// Model-tagged view of the surface with its branch predicate.
struct EntropySurface {
    std::string model;  // "aztec" | "asm"
    double w = 1.0;     // aztec only
    double value(double r, double s) const;
    bool lower_branch(double r, double s) const;
};
EntropySurface entropy_surface(const std::string& model, double w = 1.0);

// ---------------------------------------------------------------------------
// Arctic curves and tangency geometry.
// ---------------------------------------------------------------------------

// Height function of the model's arctic curve on its stated domain:
// aztec: h(x) = sqrt(1/(1+w) - x^2/w), the upper half of x^2/w + y^2 = 1/(1+w)
// asm:   h(x) = (1 + x - sqrt(3x(2-x)))/2 on [0, 1/2], the lower-left portion
//        of x(1-x) + y(1-y) + xy = 1/4.
struct ArcticCurve {
    std::string model;  // "aztec" | "asm"
    double w = 1.0;     // aztec only
    double x_lo = 0.0;
    double x_hi = 0.0;
    double h(double x) const;
    double hprime(double x) const;
    // Signed conic residual of an arbitrary point against the curve equation.
    double residual(double x, double y) const;
};
ArcticCurve aztec_curve(double w);
ArcticCurve asm_curve();

// Tangency data of the entry/exit tangent lines of a tangent-arc-tangent
// trajectory: slopes t1 (entry) and t2 (exit) touching the arc at abscissas
// x1 <= x2. Along the asm arc (convex) t1 <= t2; along the aztec arc
// (concave) t1 >= t2.
struct Tangency {
    double t1, t2;
    double x1, x2;
};

// Aztec entry tangency for the refinement endpoint (-1-r, r):
//   t1(r) = (1 - r^2(1+w)) / (1 + r(2+r)(1+w)),
//   x1(r) = -w t1 / sqrt((1+w)(1 + w t1^2));
// the exit side is the mirror image t2(s) = -t1(s), x2(s) = -x1(s).
void tangency_aztec(double r, double w, double& t1, double& x1);
Tangency tangency_aztec_pair(double r, double s, double w);

// ASM tangency for endpoints (0,r) and (s,0) on [0,1/2]^2 (arc branch):
//   t1(r) = -r(2-r)/(1-2r)  (-inf at r = 1/2, handled as a vertical entry),
//   t2(s) = -(1-2s)/(s(2-s)), abscissas via x(t) = 1 - (1-2t)/(2 sqrt(1-t+t^2)).
Tangency tangency_asm(double r, double s);

// ---------------------------------------------------------------------------
// Maximizing trajectories and the action functional.
// ---------------------------------------------------------------------------

// A maximizing trajectory: either the straight chord between the endpoints or
// the C^1 composite entry-segment / arc / exit-segment. Vertical segments
// (infinite slope, zero x-extent) appear for ASM at r = 1/2 or s = 0 and
// contribute zero action.
struct Trajectory {
    enum class Kind { straight_line, tangent_arc_tangent };
    Kind kind;
    std::string model;  // "aztec" | "asm"
    double w = 1.0;
    double ax_i, ay_i;  // initial endpoint
    double ax_f, ay_f;  // final endpoint
    std::optional<Tangency> tangency;  // set for tangent_arc_tangent
};

// Builds the maximizing trajectory for the given refinement parameters
// (aztec: endpoints (-1-r, r) -> (1+s, s); asm: (0, r) -> (s, 0)).
Trajectory build_trajectory_aztec(double r, double s, double w);
Trajectory build_trajectory_asm(double r, double s);

// S[f*] = integral of L(f*'(x)) dx: exact segment contributions plus adaptive
// quadrature along the arc (boundary layers of width 1e-6 at the junctions are
// integrated under a sqrt substitution).
double action(const Trajectory& traj);

// ---------------------------------------------------------------------------
// Saddle analysis of the g-entry sum.
// ---------------------------------------------------------------------------

// F(xi; r, s) = (xi+1)log(1+w) - 2(xi+1)log(xi+1) + (r+1)log(r+1)
//             + (s+1)log(s+1) - (r-xi)log(r-xi) - (s-xi)log(s-xi);
// the maximizer is xi* = 0 when rs(1+w) <= 1, else the smaller root of
// (xi+1)^2 = (1+w)(r-xi)(s-xi). F(xi*; r, s) equals aztec_S(r, s, w).
double saddle_F(double xi, double r, double s, double w);
double saddle_xi_star(double r, double s, double w);

// ---------------------------------------------------------------------------
// Property suites.
// ---------------------------------------------------------------------------

// Exhaustive maximum of sum_a S(r_a, s_{pi(a)}) over permutations pi, with the
// argmax set classified at tolerance 1e-12 * m. m <= 8.
struct PermutationArgmax {
    double max_value;
    std::vector<std::vector<int>> argmax;  // permutations attaining the max
    bool identity_in_argmax;
};
PermutationArgmax max_permutation_action(const std::vector<double>& rvec,
                                         const std::vector<double>& svec,
                                         const std::string& model, double w);

// Finite-difference check that r -> S(r,s) - S(r,s') is nondecreasing:
// constant where the refinement decouples from s (the arc regime, i.e. the
// aztec lower branch / the asm upper branch) and strictly increasing in the
// chord regime.
struct MonotonicityReport {
    bool constant_in_lower_regime;   // |difference drift| <= 1e-10 there
    bool increasing_in_upper_regime; // strictly positive forward differences
    double worst_lower_drift;
    double worst_upper_difference;   // most negative forward difference seen
};
MonotonicityReport difference_monotonicity(const std::vector<double>& r_grid,
                                           double s, double s_prime,
                                           const std::string& model, double w);

}  // namespace arctic
