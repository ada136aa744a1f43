#include "ridgetail/asymptote.hpp"

#include <cmath>
#include <stdexcept>

namespace ridgetail {

namespace {

struct Factor {
    double value = 1.0;
    double rel_se = 0.0;
    bool converged = true;

    void mul(const ConstantsProvider::Value& v) {
        value *= v.value;
        if (v.value != 0.0) rel_se = std::hypot(rel_se, v.se / std::abs(v.value));
        converged = converged && v.converged;
    }
    void mul_same_twice(const ConstantsProvider::Value& v) {
        value *= v.value * v.value;
        if (v.value != 0.0) rel_se = std::hypot(rel_se, 2.0 * v.se / std::abs(v.value));
        converged = converged && v.converged;
    }
};

double gamma_factor(double beta, bool boundary) {
    return (boundary ? 0.5 : 1.0) * std::tgamma(1.0 / beta + 1.0);
}

// integral of val(t) over [a,b] by doubling Gauss-Legendre, accumulating the
// linear sum of the node standard errors alongside (conservative under the
// common random numbers shared by the provider calls)
struct IntegralWithSe {
    double value = 0.0;
    double se = 0.0;
    bool converged = false;
};

template <class F>
IntegralWithSe integrate_with_se(F&& f, double a, double b, double tol, int max_nodes = 4096) {
    IntegralWithSe res;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double prev = 0.0;
    bool have_prev = false;
    for (int n = 64; n <= max_nodes; n *= 2) {
        const auto& [x, w] = gauss_legendre(n);
        double acc = 0.0, acc_se = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto [v, se] = f(mid + half * x[i]);
            acc += w[i] * v;
            acc_se += w[i] * se;
        }
        res.value = acc * half;
        res.se = acc_se * half;
        if (have_prev) {
            const double scale = std::max(std::abs(res.value), 1e-300);
            if (std::abs(res.value - prev) <= tol * scale) {
                res.converged = true;
                return res;
            }
        }
        prev = res.value;
        have_prev = true;
    }
    return res;
}

}  // namespace

TailAsymptote line_asymptote(const LineScenario& scn, ConstantsProvider& constants) {
    const LineClassification cls = classify_line(scn);
    TailAsymptote asym;
    asym.case_tag = to_string(cls.tag) + (cls.boundary ? "-boundary" : "");
    if (cls.degenerate) {
        asym.degenerate = true;
        asym.p = 2.0 / cls.alpha2;
        return asym;
    }

    const double a1 = cls.alpha1, a2 = cls.alpha2, beta = cls.beta;
    Factor fac;
    switch (cls.tag) {
        case LineCase::th21_gamma_zero:
        case LineCase::th22_gamma_zero: {
            asym.p = 2.0 / a1 + 2.0 / a2 - 2.0 / beta;
            const double corr = std::pow(cls.c1, 2.0 / a1) * std::pow(cls.c2, 2.0 / a2) *
                                std::pow(cls.cv, -2.0 / beta);
            if (a1 == a2) {
                fac.mul_same_twice(constants.pickands_const(a1));
            } else {
                fac.mul(constants.pickands_const(a1));
                fac.mul(constants.pickands_const(a2));
            }
            fac.value *= 2.0 * cls.length * gamma_factor(beta, cls.boundary) * corr;
            break;
        }
        case LineCase::th21_gamma_finite: {
            asym.p = 2.0 / a2;
            fac.mul(constants.pickands_const(a2));
            fac.mul(constants.piterbarg_const(a1, cls.gamma1, cls.boundary));
            fac.value *= cls.length * std::pow(cls.c2, 2.0 / a2);
            break;
        }
        case LineCase::th21_gamma_inf: {
            asym.p = 2.0 / a2;
            fac.mul(constants.pickands_const(a2));
            fac.value *= cls.length * std::pow(cls.c2, 2.0 / a2);
            break;
        }
        case LineCase::th22_gamma_finite: {
            asym.p = 2.0 / a2;
            fac.mul(constants.gen_rate_const(a1, cls.gamma1, cls.b_constant, cls.boundary));
            fac.value *= cls.length * std::pow(cls.c2, 2.0 / a2);
            break;
        }
        case LineCase::th22_gamma_inf: {
            asym.p = 2.0 / a2;
            fac.mul(constants.pickands_const(a1));
            const double tilt = std::pow(std::pow(std::abs(cls.b_constant), a1) + 1.0, 1.0 / a1);
            fac.value *= cls.length * tilt * std::pow(cls.c2, 2.0 / a2);
            break;
        }
    }
    asym.K = fac.value;
    asym.K_se = std::abs(fac.value) * fac.rel_se;
    asym.converged = fac.converged;
    return asym;
}

TailAsymptote curve_asymptote(const CurveScenario& scn, ConstantsProvider& constants,
                              double quad_tol) {
    scn.validate();
    // condition F and the g bounds, checked on an interior sampling grid
    constexpr int kValidationPoints = 201;
    for (int i = 0; i < kValidationPoints; ++i) {
        const double t = scn.T1 + (i + 0.5) * (scn.T2 - scn.T1) / kValidationPoints;
        const double fp = scn.f_prime(t);
        const double gv = scn.g(t);
        if (!std::isfinite(fp) || std::abs(fp) < 1e-9)
            throw std::invalid_argument("curve_asymptote: |f'| vanishes on the interval");
        if (!std::isfinite(gv) || gv < 1e-9 || gv > 1e12)
            throw std::invalid_argument("curve_asymptote: g outside its bounds");
    }

    const double a1 = 2.0 * scn.rho1.index;
    const double a2 = 2.0 * scn.rho2.index;
    const double beta = 2.0 * scn.v.index;
    const double eta = power_ratio_limit(scn.rho2, scn.rho1);

    TailAsymptote asym;
    Factor fac;
    IntegralWithSe integral;

    auto gamma_zero_branch = [&]() {
        asym.p = 2.0 / a1 + 2.0 / a2 - 2.0 / beta;
        const double corr = std::pow(scn.rho1.coeff, 2.0 / a1) *
                            std::pow(scn.rho2.coeff, 2.0 / a2) *
                            std::pow(scn.v.coeff, -2.0 / beta);
        if (a1 == a2) {
            fac.mul_same_twice(constants.pickands_const(a1));
        } else {
            fac.mul(constants.pickands_const(a1));
            fac.mul(constants.pickands_const(a2));
        }
        integral = integrate_with_se(
            [&](double t) { return std::pair<double, double>{1.0 / scn.g(t), 0.0}; }, scn.T1,
            scn.T2, quad_tol);
        fac.value *= 2.0 * gamma_factor(beta, scn.boundary) * corr;
    };

    if (eta == 0.0) {
        const double gamma2 = power_ratio_limit(scn.v, scn.rho2);
        if (gamma2 == 0.0) {
            asym.case_tag = "th3.1-gamma0";
            gamma_zero_branch();
        } else {
            asym.case_tag = std::isfinite(gamma2) ? "th3.1-gamma-finite" : "th3.1-gamma-inf";
            asym.p = 2.0 / a1;
            fac.mul(constants.pickands_const(a1));
            fac.value *= std::pow(scn.rho1.coeff, 2.0 / a1);
            bool nodes_ok = true;
            integral = integrate_with_se(
                [&](double t) {
                    const double fp = std::abs(scn.f_prime(t));
                    double pv = 1.0, pse = 0.0;
                    if (std::isfinite(gamma2)) {
                        const double g = gamma2 * std::pow(fp * scn.g(t), a2);
                        const auto c = constants.piterbarg_const(a2, g, scn.boundary);
                        pv = c.value;
                        pse = c.se;
                        nodes_ok = nodes_ok && c.converged;
                    }
                    return std::pair<double, double>{pv * fp, pse * fp};
                },
                scn.T1, scn.T2, quad_tol);
            fac.converged = fac.converged && nodes_ok;
        }
    } else if (std::isfinite(eta)) {
        const double gamma1 = power_ratio_limit(scn.v, scn.rho1);
        if (gamma1 == 0.0) {
            asym.case_tag = "th3.2-gamma0";
            gamma_zero_branch();
        } else if (std::isfinite(gamma1)) {
            asym.case_tag = "th3.2-gamma-finite";
            asym.p = 2.0 / a2;
            fac.value *= std::pow(scn.rho2.coeff, 2.0 / a2);
            bool nodes_ok = true;
            integral = integrate_with_se(
                [&](double t) {
                    const double g = gamma1 * std::pow(scn.g(t), a1);
                    const double tilt = -std::pow(eta, -1.0 / a1) * std::abs(scn.f_prime(t));
                    const auto c = constants.gen_rate_const(a1, g, tilt, scn.boundary);
                    nodes_ok = nodes_ok && c.converged;
                    return std::pair<double, double>{c.value, c.se};
                },
                scn.T1, scn.T2, quad_tol);
            fac.converged = fac.converged && nodes_ok;
        } else {
            asym.case_tag = "th3.2-gamma-inf";
            asym.p = 2.0 / a2;
            fac.mul(constants.pickands_const(a1));
            fac.value *= std::pow(scn.rho2.coeff, 2.0 / a2);
            integral = integrate_with_se(
                [&](double t) {
                    const double fp = std::abs(scn.f_prime(t));
                    const double val = std::pow(std::pow(fp, a1) / eta + 1.0, 1.0 / a1);
                    return std::pair<double, double>{val, 0.0};
                },
                scn.T1, scn.T2, quad_tol);
        }
    } else {
        const double gamma1 = power_ratio_limit(scn.v, scn.rho1);
        if (gamma1 == 0.0) {
            asym.case_tag = "th3.3-gamma0";
            gamma_zero_branch();
        } else {
            asym.case_tag = std::isfinite(gamma1) ? "th3.3-gamma-finite" : "th3.3-gamma-inf";
            asym.p = 2.0 / a2;
            fac.mul(constants.pickands_const(a2));
            fac.value *= std::pow(scn.rho2.coeff, 2.0 / a2);
            bool nodes_ok = true;
            integral = integrate_with_se(
                [&](double t) {
                    double pv = 1.0, pse = 0.0;
                    if (std::isfinite(gamma1)) {
                        const double g = gamma1 * std::pow(scn.g(t), beta);
                        const auto c = constants.piterbarg_const(a1, g, scn.boundary);
                        pv = c.value;
                        pse = c.se;
                        nodes_ok = nodes_ok && c.converged;
                    }
                    return std::pair<double, double>{pv, pse};
                },
                scn.T1, scn.T2, quad_tol);
            fac.converged = fac.converged && nodes_ok;
        }
    }
    if (scn.boundary) asym.case_tag += "-boundary";

    asym.K = fac.value * integral.value;
    // the factor and the integral carry independent uncertainties
    asym.K_se = std::hypot(fac.rel_se * asym.K, fac.value * integral.se);
    asym.converged = fac.converged && integral.converged;
    return asym;
}

TailAsymptote fbm_sum_asymptote(double alpha1, double alpha2, ConstantsProvider& constants) {
    for (double a : {alpha1, alpha2})
        if (!(a > 0.0) || !(a < 2.0))
            throw std::domain_error("fbm_sum_asymptote: alpha must lie in (0, 2)");
    double a1 = alpha1, a2 = alpha2;
    if (a1 > a2) std::swap(a1, a2);  // domain is symmetric under coordinate swap

    TailAsymptote asym;
    Factor fac;
    if (a1 < a2) {
        if (a2 < 1.0) {
            asym.case_tag = "cor4.1-sub1";
            asym.p = 2.0 / a1 + 2.0 / a2 - 2.0;
            fac.mul(constants.pickands_const(a1));
            fac.mul(constants.pickands_const(a2));
            const double integral = beta_reduced_integral(a2, 1.0 / a1);
            fac.value *= std::pow(2.0, 3.0 - 1.0 / a1 - 1.0 / a2) / a1 * integral;
        } else if (a2 == 1.0) {
            asym.case_tag = "cor4.1-crit1";
            asym.p = 2.0 / a1;
            fac.mul(constants.pickands_const(a1));
            fac.value *= std::pow(2.0, 3.0 - 1.0 / a1);
        } else {
            asym.case_tag = "cor4.1-super1";
            asym.p = 2.0 / a1;
            fac.mul(constants.pickands_const(a1));
            // int_0^1 (1-t^a2)^(1/a1-1) t^(a2-1) dt = a1/a2 exactly
            const double integral = a1 / a2;
            fac.value *= std::pow(2.0, 2.0 - 1.0 / a1) * (a2 / a1) * integral;
        }
    } else {
        const double a = a1;
        if (a < 1.0) {
            asym.case_tag = "cor4.2-sub1";
            asym.p = 4.0 / a - 2.0;
            fac.mul_same_twice(constants.pickands_const(a));
            const double integral = beta_reduced_integral(a, 1.0 / a);
            fac.value *= std::pow(2.0, 3.0 - 2.0 / a) / a * integral;
        } else if (a == 1.0) {
            asym.case_tag = "cor4.2-crit1";
            asym.p = 2.0;
            fac.mul(constants.gen_rate_const(1.0, 1.0, -1.0, true));
            fac.value *= 2.0;
        } else {
            asym.case_tag = "cor4.2-super1";
            asym.p = 2.0 / a;
            fac.mul(constants.pickands_const(a));
            // int_0^1 (1 + t^(a(a-1)) (1-t^a)^(1-a))^(1/a) dt; the integrand
            // has an integrable endpoint singularity at 1, removed by the
            // substitution t = (1 - u^a)^(1/a) on the right half
            auto raw = [a](double t) {
                return std::pow(1.0 + std::pow(t, a * (a - 1.0)) *
                                          std::pow(1.0 - std::pow(t, a), 1.0 - a),
                                1.0 / a);
            };
            const double split = std::pow(0.5, 1.0 / a);
            const QuadResult left = integrate_doubling(raw, 0.0, split, 1e-10);
            auto right_sub = [a](double u) {
                const double ua = std::pow(u, a);
                const double f = std::pow(1.0 + std::pow(1.0 - ua, a - 1.0) *
                                                    std::pow(u, a * (1.0 - a)),
                                          1.0 / a);
                return f * std::pow(u, a - 1.0) * std::pow(1.0 - ua, 1.0 / a - 1.0);
            };
            const QuadResult right = integrate_doubling(right_sub, 0.0, split, 1e-10);
            fac.converged = fac.converged && left.converged && right.converged;
            fac.value *= std::pow(2.0, 2.0 - 1.0 / a) * (left.value + right.value);
        }
    }
    asym.K = fac.value;
    asym.K_se = std::abs(fac.value) * fac.rel_se;
    asym.converged = fac.converged;
    return asym;
}

}  // namespace ridgetail
