#include "arctic/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "arctic/errors.hpp"

namespace arctic {

NumericSettings& settings() {
    static NumericSettings s;
    return s;
}

void read_settings_from_env() {
    const char* raw = std::getenv("ARCTIC_NUMERIC_TOL");
    if (raw == nullptr || *raw == '\0') return;
    double base = 0.0;
    try {
        base = std::stod(raw);
    } catch (const std::exception&) {
        throw ValueOutOfRange("ARCTIC_NUMERIC_TOL is not a number: " +
                              std::string(raw));
    }
    if (!(base > 0.0)) {
        throw ValueOutOfRange("ARCTIC_NUMERIC_TOL must be positive");
    }
    NumericSettings& s = settings();
    s.algebraic_tol = base;
    s.inversion_tol = 100.0 * base;
    s.quadrature_tol = 1000.0 * base;
}

namespace {

// Gauss-Kronrod 7/15 nodes on the positive half-interval. Rows 0-3 are the
// Gauss points (row 0 is the center), rows 4-7 the Kronrod-only points.
struct GkRow {
    double node;
    double gauss;
    double kronrod;
};
constexpr GkRow kGk[8] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hm = 0.5 * (b - a);
    const double f0 = f(c);
    double g = kGk[0].gauss * f0;
    double k = kGk[0].kronrod * f0;
    for (int i = 1; i < 8; ++i) {
        const double fi = f(c + hm * kGk[i].node) + f(c - hm * kGk[i].node);
        g += kGk[i].gauss * fi;
        k += kGk[i].kronrod * fi;
    }
    return Panel{a, b, k * hm, std::abs(k - g) * std::abs(hm)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
    if (a == b) return 0.0;
    constexpr int kMaxPanels = 20000;
    std::priority_queue<Panel> heap;
    Panel whole = gk15(f, a, b);
    double total_v = whole.value;
    double total_e = whole.error;
    heap.push(whole);
    int n = 1;
    while (total_e > abs_tol) {
        if (n >= kMaxPanels || heap.empty()) {
            throw QuadratureFailure(
                "adaptive quadrature failed to reach tolerance " +
                std::to_string(abs_tol) + " (error " + std::to_string(total_e) +
                " after " + std::to_string(n) + " panels)");
        }
        Panel worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        Panel left = gk15(f, worst.a, m);
        Panel right = gk15(f, m, worst.b);
        total_v += left.value + right.value - worst.value;
        total_e += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    return total_v;
}

double quadratic_fit_derivative(const double* xs, const double* ys, int count,
                                int i) {
    if (i < 0 || i >= count) {
        throw IndexRange("fit index " + std::to_string(i) +
                         " outside table of size " + std::to_string(count));
    }
    return quadratic_fit_derivative_at(xs, ys, count, i, xs[i]);
}

double quadratic_fit_derivative_at(const double* xs, const double* ys,
                                   int count, int i, double x0) {
    if (count < 5) {
        throw EdgeOfTable("quadratic fit needs at least 5 samples, got " +
                          std::to_string(count));
    }
    if (i < 0 || i >= count) {
        throw IndexRange("fit index " + std::to_string(i) +
                         " outside table of size " + std::to_string(count));
    }
    // Normal equations for y = a + b (x - x0) + c (x - x0)^2 over the window
    // of 5 samples nearest index i, solved by Cramer's rule.
    const int j0 = std::max(0, std::min(i - 2, count - 5));
    double S[5] = {0, 0, 0, 0, 0};
    double T[3] = {0, 0, 0};
    for (int j = j0; j < j0 + 5; ++j) {
        const double d = xs[j] - x0;
        double p = 1.0;
        for (int q = 0; q < 5; ++q) {
            S[q] += p;
            p *= d;
        }
        p = ys[j];
        for (int q = 0; q < 3; ++q) {
            T[q] += p;
            p *= d;
        }
    }
    const double M[3][3] = {{S[0], S[1], S[2]},
                            {S[1], S[2], S[3]},
                            {S[2], S[3], S[4]}};
    auto det3 = [](const double A[3][3]) {
        return A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
               A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
               A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
    };
    const double D = det3(M);
    if (D == 0.0) {
        throw DegenerateEnvelope("singular least-squares system in derivative fit");
    }
    const double Mb[3][3] = {{M[0][0], T[0], M[0][2]},
                             {M[1][0], T[1], M[1][2]},
                             {M[2][0], T[2], M[2][2]}};
    return det3(Mb) / D;
}

}  // namespace arctic
