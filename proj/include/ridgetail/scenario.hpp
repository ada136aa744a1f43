#pragma once

#include <functional>
#include <string>

namespace ridgetail {

// Pure power c * t^lambda near 0, standing in for the regularly varying
// correlation and variance profiles. Pure powers make the asymptotic
// inverse exact: inverse(x) = (x / coeff)^(1 / index).
struct PowerLaw {
    double coeff = 1.0;
    double index = 0.5;

    double operator()(double t) const;
    double inverse(double x) const;
    void validate() const;
};

// Variance maximal on the line {s + b t = 0} inside [-T1,T1] x [-T2,T2].
// 1 - r ~ rho1^2(|s-s1|) + rho2^2(|t-t1|) near the line, 1 - sigma ~
// v^2(|s+bt|). With boundary set, the domain is the half plane of the
// boundary variant and (T1, T2) are the t-range (t1 < t2) of the segment of
// the line inside the domain.
struct LineScenario {
    double T1 = 1.0, T2 = 1.0;
    double b = 0.0;
    PowerLaw rho1, rho2, v;
    bool boundary = false;

    void validate() const;
};

// Variance maximal on the curve {s = f(t)} inside [S1,S2] x [T1,T2];
// 1 - sigma ~ v^2(g(t) |s - f(t)|). With boundary set, the domain is one
// side of the curve.
struct CurveScenario {
    double T1 = 0.0, T2 = 1.0;
    std::function<double(double)> f, f_prime, g;
    PowerLaw rho1, rho2, v;
    bool boundary = false;

    void validate() const;
};

enum class LineCase {
    th21_gamma_zero,
    th21_gamma_finite,
    th21_gamma_inf,
    th22_gamma_zero,
    th22_gamma_finite,
    th22_gamma_inf,
};

std::string to_string(LineCase tag);

// Outcome of the symbolic case split. For b != 0 with eta in {0, inf} the
// coordinate reduction to the b = 0 case has already been applied: alpha/c
// fields describe the transformed scenario and `length` is the transformed
// segment length entering the prefactor.
struct LineClassification {
    LineCase tag = LineCase::th21_gamma_zero;
    double alpha1 = 1.0, alpha2 = 1.0, beta = 1.0;
    double c1 = 1.0, c2 = 1.0, cv = 1.0;  // canonical power-law coefficients
    double gamma1 = 0.0;                  // finite value on the *_finite tags
    double eta = 1.0;                     // finite value on the th22 tags
    double b_constant = 0.0;              // tilt b*eta^(-1/alpha1) of the th22 constant
    double length = 0.0;                  // segment length in the prefactor
    bool boundary = false;
    bool degenerate = false;              // zero-length segment
};

LineClassification classify_line(const LineScenario& scn);

// eta / gamma limits for a pair of pure powers: index comparison decides
// {0, finite, inf}; coefficients matter only on ties.
double power_ratio_limit(const PowerLaw& num, const PowerLaw& den);

}  // namespace ridgetail
