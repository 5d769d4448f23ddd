#pragma once

#include <string>
#include <vector>

#include "arctic/exact.hpp"

namespace arctic {

// One allowed step (u, v) with a positive weight. Directedness requires u >= 0
// and (u, v) != (0, 0); step sets must contain at least one step with u > 0.
struct Step {
    int u = 0;
    int v = 0;
    double weight = 1.0;
};

// A finite step set with its characteristic function P(x,y) = sum w x^u y^v.
// The slope domain (t_min, t_max) is the open interval of mean slopes a long
// path can realize; steps with u = 0 contribute signed-infinite endpoints
// (e.g. the ASM set {(1,0),(0,-1)} has domain (-inf, 0)).
class StepSet {
  public:
    StepSet(std::vector<Step> steps, std::string label);

    static StepSet aztec(double w);                    // {(1,1),(1,-1),(2,0;w)}
    static StepSet asm_paths();                        // {(1,0),(0,-1)}
    static StepSet sixvertex(double w1, double w2);    // asm steps, weights w1,w2

    const std::vector<Step>& steps() const { return steps_; }
    const std::string& label() const { return label_; }
    double slope_min() const { return t_min_; }
    double slope_max() const { return t_max_; }
    bool contains_slope(double t) const { return t > t_min_ && t < t_max_; }

    double P(double x, double y) const;
    double x_dPdx(double x, double y) const;
    double y_dPdy(double x, double y) const;

  private:
    std::vector<Step> steps_;
    std::string label_;
    double t_min_ = 0.0;
    double t_max_ = 0.0;
};

// Monomial view of P(x,y), one (coefficient, x-power, y-power) per step.
struct Monomial {
    double coefficient;
    int x_power;
    int y_power;
};
std::vector<Monomial> char_polynomial(const StepSet& s);

// The positive solution of P(x,y) = 1, t x dP/dx = y dP/dy for a slope t in
// the open domain.
struct SlopeSolution {
    double t;
    double x;
    double y;
};
SlopeSolution solve_xy(const StepSet& s, double t);

// L(t) = -log x(t) - t log y(t) and its derivative L'(t) = -log y(t).
struct LagrangeanEval {
    double t;
    double L;
    double Lprime;
};
LagrangeanEval lagrangean(const StepSet& s, double t);

// Inverse of the strictly decreasing t -> L'(t); throws ValueOutOfRange when v
// is not attained in the open slope domain.
double invert_Lprime(const StepSet& s, double v);

// Weighted count of six-vertex boundary paths ending at (p, q), p >= 0 >= q:
// Z = w1^{p-q+1} sum_l C(p,l) C(-q,l) tau^{2l+1}, tau = w2/w1, summed exactly.
ExactRational sixvertex_exact_Zpq(long p, long q, const ExactRational& w1,
                                  const ExactRational& w2);

// The six-vertex Lagrangean for t <= 0:
//   L(t; w1, w2) = (1-t) log w1 + (1-t) La((1+t)/(1-t))
// where La is the aztec Lagrangean with weight parameter tau^2 - 1 (which may
// lie in (-1, 0]; the closed form remains valid there). At w1 = w2 = 1 this
// reduces to the ASM Lagrangean.
double sixvertex_lagrangean(double t, double w1, double w2);

}  // namespace arctic
