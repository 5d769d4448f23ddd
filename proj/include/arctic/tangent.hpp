#pragma once

#include <functional>
#include <string>
#include <vector>

#include "arctic/exact.hpp"
#include "arctic/step_model.hpp"

namespace arctic {

// Rate function S(r) fed to the tangent method: either a closed form on an
// open interval, or a table of samples with strictly increasing abscissae
// (at least 10 points, second differences bounded).
class RateFunction {
  public:
    static RateFunction closed_form(std::function<double(double)> f,
                                    double r_lo, double r_hi);
    static RateFunction tabulated(std::vector<double> r, std::vector<double> S);

    bool is_tabulated() const { return tabulated_; }
    double r_lo() const { return r_lo_; }
    double r_hi() const { return r_hi_; }
    const std::vector<double>& grid() const { return r_; }

    // S'(r). Closed form: central difference with step 1e-6. Tabulated: local
    // least-squares quadratic over the 5 samples nearest r (EdgeOfTable when
    // r falls outside the tabulated range).
    double derivative(double r) const;

  private:
    RateFunction() = default;
    bool tabulated_ = false;
    std::function<double(double)> f_;
    std::vector<double> r_, s_;
    double r_lo_ = 0.0, r_hi_ = 0.0;
};

// Geometry of the refinement: the refined path starts at
// a(r) = origin + r * velocity and the family of tangent lines through a(r)
// with slope t*(r) envelopes the arctic curve. The transversality relation
// fixing t* is  S'(r) = -vel_x * L(t*) + (vel_y - vel_x * t*) * log y(t*);
// with velocity (0,1) this is the familiar L'(t*) = -S'(r).
struct TangentFrame {
    double origin_x, origin_y;
    double vel_x, vel_y;

    // ASM convention: start (0, r) moving straight up.
    static TangentFrame vertical();
    // Aztec convention: start (-1-r, r) moving along (-1, 1).
    static TangentFrame aztec_corner();
};

// Envelope samples. The r column stores the tangent line's y-intercept, so
// y = t_star * x + r holds at every sample regardless of frame (for the
// vertical frame the intercept IS the refinement parameter).
struct ParametricCurve {
    struct Sample {
        double r;
        double t_star;
        double x;
        double y;
    };
    std::vector<Sample> samples;
};

// Tangent slope t*(r) solving the frame's transversality relation.
double slope_from_S(const RateFunction& S, double r, const StepSet& L,
                    const TangentFrame& frame = TangentFrame::vertical());

// Envelope of the tangent-line family over r_grid:
//   x = a_x(r) - (vel_y - vel_x t*) / (dt*/dr),  y = t* (x - a_x) + a_y.
// dt*/dr by central differences on the t* samples (closed-form input: fresh
// local differences, step 1e-4; tabulated input: differences on the grid).
// DegenerateEnvelope where |dt*/dr| < settings().envelope_degeneracy.
ParametricCurve envelope(const RateFunction& S, const StepSet& L,
                         const std::vector<double>& r_grid,
                         const TangentFrame& frame = TangentFrame::vertical());

// Full pipeline from exact lattice data at order n: build a tabulated
// RateFunction from boundary-refined counts, then run the envelope.
//   model "asm":   S_n(r) = (1/n) log z1out(n, k),        frame vertical
//   model "aztec": S_n(r) = (1/n) log g(n, k, 1),          frame aztec_corner
// with k = round(r n) (deduplicated, so the table never staircases) and the
// grid trimmed two points per side before differencing.
ParametricCurve reconstruct_from_lattice(const std::string& model, long n,
                                         const std::vector<double>& r_grid,
                                         double w = 1.0);

}  // namespace arctic
