// Independent numerical oracles used only by the tests. These deliberately
// avoid the library's own quadrature and convolution code paths.
#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "bubble/geometry.hpp"

namespace oracles {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

/// Adaptive Simpson with Richardson correction; the reference integrator for
/// every 1-D integral oracle in the tests.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// int_0^s sin(omega (s - tau)) f(tau) dtau by the reference integrator.
inline double sine_convolution_reference(double omega,
                                         const std::function<double(double)>& f,
                                         double s, double tol = 1e-12) {
    if (s <= 0.0) return 0.0;
    return integrate([&](double tau) { return std::sin(omega * (s - tau)) * f(tau); },
                     0.0, s, tol);
}

/// Integral of g over the flat triangle (a,b,c) by uniform barycentric
/// refinement with the degree-2 midpoint rule (3 edge midpoints per cell).
inline double triangle_integral_refined(const bubble::Vec3& a, const bubble::Vec3& b,
                                        const bubble::Vec3& c,
                                        const std::function<double(const bubble::Vec3&)>& g,
                                        int n) {
    const double area = 0.5 * cross(b - a, c - a).norm();
    const double cell_weight = area / (n * n) / 3.0;
    double sum = 0.0;
    auto point = [&](double u, double v) { return a + (b - a) * u + (c - a) * v; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n - i; ++j) {
            const double u = double(i) / n, v = double(j) / n, h = 1.0 / n;
            // upward cell (u,v), (u+h,v), (u,v+h)
            sum += cell_weight * (g(point(u + h / 2, v)) + g(point(u, v + h / 2)) +
                                  g(point(u + h / 2, v + h / 2)));
            if (j < n - i - 1) {
                // downward cell (u+h,v), (u+h,v+h), (u,v+h)
                sum += cell_weight * (g(point(u + h, v + h / 2)) +
                                      g(point(u + h / 2, v + h)) +
                                      g(point(u + h / 2, v + h / 2)));
            }
        }
    }
    return sum;
}

/// Centered 4th-order finite-difference second derivative.
inline double second_derivative_fd(const std::function<double(double)>& f, double t,
                                   double h) {
    return (-f(t - 2 * h) + 16 * f(t - h) - 30 * f(t) + 16 * f(t + h) - f(t + 2 * h)) /
           (12.0 * h * h);
}

/// Least-squares slope of log(y) against log(x).
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles
