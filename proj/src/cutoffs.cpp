#include "skdv/cutoffs.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace skdv::cutoffs {

namespace {

// g(t) = exp(-1/t) for t > 0, else 0, with derivatives.
double g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double g_d1(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }
double g_d2(double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(-1.0 / t) * (1.0 / (t * t * t * t) - 2.0 / (t * t * t));
}

void check_K(double K) {
    if (!(K > 0.0)) throw std::invalid_argument("cutoff: K must be positive");
}

// Adaptive Simpson quadrature.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return adaptive_simpson(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, 40);
}

// Unit-profile antiderivatives: Psi_p(y) = int_0^y t^p phi(t) dt for y >= 0.
double unit_psi(double y, int p) {
    const double plateau = p == 1 ? 0.5 : 1.0 / 3.0;  // int_0^1 t^p dt
    if (y <= 1.0) return p == 1 ? 0.5 * y * y : y * y * y / 3.0;
    const double upper = std::min(y, 2.0);
    auto integrand = [p](double t) { return (p == 1 ? t : t * t) * bump(t); };
    return plateau + integrate(integrand, 1.0, upper, 1e-12);
}

}  // namespace

double bump(double x) {
    const double a = std::abs(x);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double num = g(2.0 - a);
    return num / (num + g(a - 1.0));
}

double bump_d1(double x) {
    const double a = std::abs(x);
    if (a <= 1.0 || a >= 2.0) return 0.0;
    const double ga = g(2.0 - a), gb = g(a - 1.0);
    const double da = -g_d1(2.0 - a), db = g_d1(a - 1.0);
    const double s = ga + gb;
    const double d = (da * gb - ga * db) / (s * s);
    return x >= 0.0 ? d : -d;
}

double bump_d2(double x) {
    const double a = std::abs(x);
    if (a <= 1.0 || a >= 2.0) return 0.0;
    const double ga = g(2.0 - a), gb = g(a - 1.0);
    const double da = -g_d1(2.0 - a), db = g_d1(a - 1.0);
    const double dda = g_d2(2.0 - a), ddb = g_d2(a - 1.0);
    const double s = ga + gb, sd = da + db;
    return (dda * gb - ga * ddb) / (s * s) - 2.0 * (da * gb - ga * db) * sd / (s * s * s);
}

double tail_profile(double xi) {
    const double a = std::abs(xi);
    if (a >= 1.0) return 1.0;
    if (a <= 0.5) return 0.0;
    const double num = g(a - 0.5);
    return num / (num + g(1.0 - a));
}

double phi_K(double x, double K) {
    check_K(K);
    if (std::isinf(K)) return 1.0;
    return bump(x / K);
}

double phi_K_d1(double x, double K) {
    check_K(K);
    if (std::isinf(K)) return 0.0;
    return bump_d1(x / K) / K;
}

double phi_K_d2(double x, double K) {
    check_K(K);
    if (std::isinf(K)) return 0.0;
    return bump_d2(x / K) / (K * K);
}

double psi_K(double x, double K) {
    check_K(K);
    if (std::isinf(K)) return 1.0;
    return x * bump_d1(x / K) / K + bump(x / K);
}

double psi1_K(double x, double K) {
    check_K(K);
    const double a = std::abs(x);  // even: int_0^{-x} s phi_K = int_0^x s phi_K
    if (std::isinf(K) || a <= K) return 0.5 * a * a;
    return K * K * unit_psi(a / K, 1);
}

double psi2_K(double x, double K) {
    check_K(K);
    const double a = std::abs(x);
    const double sign = x >= 0.0 ? 1.0 : -1.0;  // odd integrand antiderivative
    if (std::isinf(K) || a <= K) return sign * a * a * a / 3.0;
    return sign * K * K * K * unit_psi(a / K, 2);
}

}  // namespace skdv::cutoffs
