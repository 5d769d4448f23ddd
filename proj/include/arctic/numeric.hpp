#pragma once

#include <cmath>
#include <functional>

namespace arctic {

// One global record of numeric tolerances and budgets. Every tolerance used by
// the library lives here so that a single environment override
// (ARCTIC_NUMERIC_TOL, see read_settings_from_env) rescales the whole stack
// consistently: algebraic residuals at the base value, inversions at 100x,
// quadrature at 1000x of it.
struct NumericSettings {
    double algebraic_tol = 1e-12;   // P(x,y)=1 and slope-condition residuals
    double inversion_tol = 1e-10;   // invert_Lprime and other 1D inversions
    double quadrature_tol = 1e-9;   // absolute tolerance of the action integral
    int iteration_budget = 200;     // all iterative solvers
    int lgv_cap = 40;               // max n+m for the full-determinant oracle
    int brute_cap = 4;              // max n+m for the brute-force oracle
    double envelope_degeneracy = 1e-12;  // |dt*/dr| below this is degenerate
};

NumericSettings& settings();

// Applies ARCTIC_NUMERIC_TOL (if set) to the global record. Called once by the
// CLI; tests use the defaults.
void read_settings_from_env();

// x log x extended by continuity with the exact special case at zero.
inline double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

// Adaptive Gauss-Kronrod 7/15 quadrature on [a,b] to an absolute tolerance.
// Bisects the worst interval recursively; throws QuadratureFailure when the
// subdivision budget is exhausted before the error estimate drops below tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

// Least-squares quadratic fit over the 5 samples nearest xs[i]; returns the
// fitted derivative at xs[i]. xs must be strictly increasing with >= 5 points.
double quadratic_fit_derivative(const double* xs, const double* ys, int count,
                                int i);

// Same fit window (5 samples nearest index i), derivative evaluated at an
// arbitrary abscissa x0 inside the window.
double quadratic_fit_derivative_at(const double* xs, const double* ys,
                                   int count, int i, double x0);

}  // namespace arctic
