#include "oracles.hpp"

#include <cmath>

namespace oracles {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           adaptive(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    return adaptive(f, a, fa, b, fb, m, fm, simpson(f, a, fa, b, fb, m, fm), tol, 60);
}

double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           int levels) {
    // x = (a+b)/2 + (b-a)/2 * tanh(pi/2 sinh(u)); trapezoid in u, step halved
    // per level. |u| is capped where the node would round onto an endpoint.
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    const double u_max = 5.0;

    auto node_sum = [&](double u) {
        const double sh = M_PI_2 * std::sinh(u);
        // distance of the node from the nearer endpoint, computed without
        // the cancellation of 1 - tanh(sh)
        const double d = 2.0 / (std::exp(2.0 * sh) + 1.0);
        const double w = M_PI_2 * std::cosh(u) / (std::cosh(sh) * std::cosh(sh));
        double val = 0.0;
        const double xp = b - r * d, xm = a + r * d;
        if (xp > a && xp < b) {
            const double fp = f(xp);
            if (std::isfinite(fp)) val += fp;
        }
        if (xm > a && xm < b) {
            const double fm = f(xm);
            if (std::isfinite(fm)) val += fm;
        }
        return w * val;
    };

    double h = 1.0;
    double sum = M_PI_2 * f(c);  // u = 0
    for (double u = 1.0; u <= u_max; u += 1.0) sum += node_sum(u);
    sum *= r * h;
    for (int level = 1; level <= levels; ++level) {
        h *= 0.5;
        double part = 0.0;
        for (double u = h; u <= u_max; u += 2.0 * h) part += node_sum(u);
        sum = 0.5 * sum + r * part * h;
    }
    return sum;
}

double beta_integral_by_quadrature(double a, double b) {
    return 2.0 / a *
           integrate_tanh_sinh(
               [a, b](double th) {
                   return std::pow(std::sin(th), 2.0 / a - 1.0) *
                          std::pow(std::cos(th), 2.0 * b - 1.0);
               },
               0.0, M_PI_2);
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

double normal_tail(double u) {
    if (u > 0)
        return integrate([](double x) { return normal_pdf(x); }, u, u + 40.0, 1e-14);
    return 1.0 - normal_tail(-u);
}

double drifted_bm_sup_tail(double m, double mu, double sigma, double S) {
    const double sd = sigma * std::sqrt(S);
    return normal_tail((m + mu * S) / sd) +
           std::exp(-2.0 * mu * m / (sigma * sigma)) * normal_tail((m - mu * S) / sd);
}

double bm_exp_sup_functional(double gamma, double S) {
    const double mu = 1.0 + gamma;
    const double sigma = std::sqrt(2.0);
    // E e^M = 1 + int_0^inf e^m P(M > m) dm; the integrand decays like
    // e^{m(1 - 2 mu / sigma^2)} = e^{-gamma m} below m = mu S and Gaussian
    // beyond, so a generous finite horizon suffices
    const double hi = mu * S + 60.0 * sigma * std::sqrt(S) + 60.0;
    return 1.0 + integrate(
                     [&](double m) {
                         return std::exp(m) * drifted_bm_sup_tail(m, mu, sigma, S);
                     },
                     0.0, hi, 1e-11);
}

double degenerate_1d_functional(const std::function<double(double)>& g, double tol) {
    return integrate([&](double n) { return std::exp(g(n)) * normal_pdf(n); }, -10.0, 10.0, tol);
}

double degenerate_2d_functional(const std::function<double(double, double)>& g, double tol) {
    return integrate(
        [&](double m) {
            return normal_pdf(m) *
                   integrate([&](double n) { return std::exp(g(m, n)) * normal_pdf(n); }, -9.0,
                             9.0, tol);
        },
        -9.0, 9.0, tol);
}

}  // namespace oracles
