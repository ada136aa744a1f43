#include "ridgetail/scenario.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ridgetail {

double PowerLaw::operator()(double t) const { return coeff * std::pow(t, index); }

double PowerLaw::inverse(double x) const { return std::pow(x / coeff, 1.0 / index); }

void PowerLaw::validate() const {
    if (!(coeff > 0.0)) throw std::domain_error("PowerLaw: coeff must be positive");
    if (!(index > 0.0)) throw std::domain_error("PowerLaw: index must be positive");
}

void LineScenario::validate() const {
    rho1.validate();
    rho2.validate();
    v.validate();
    if (!(rho1.index <= 1.0) || !(rho2.index <= 1.0))
        throw std::domain_error("LineScenario: correlation indices must satisfy alpha <= 2");
    if (boundary) {
        if (!(T2 > T1)) throw std::domain_error("LineScenario: segment requires T1 < T2");
    } else {
        if (!(T1 >= 0.0) || !(T2 >= 0.0))
            throw std::domain_error("LineScenario: T1, T2 must be nonnegative");
    }
}

void CurveScenario::validate() const {
    rho1.validate();
    rho2.validate();
    v.validate();
    if (!(T2 > T1)) throw std::domain_error("CurveScenario: requires T1 < T2");
    if (!f || !f_prime || !g) throw std::domain_error("CurveScenario: f, f', g must be set");
}

std::string to_string(LineCase tag) {
    switch (tag) {
        case LineCase::th21_gamma_zero: return "th2.1-gamma0";
        case LineCase::th21_gamma_finite: return "th2.1-gamma-finite";
        case LineCase::th21_gamma_inf: return "th2.1-gamma-inf";
        case LineCase::th22_gamma_zero: return "th2.2-gamma0";
        case LineCase::th22_gamma_finite: return "th2.2-gamma-finite";
        case LineCase::th22_gamma_inf: return "th2.2-gamma-inf";
    }
    return "?";
}

double power_ratio_limit(const PowerLaw& num, const PowerLaw& den) {
    // limit of num^2(t) / den^2(t) as t -> 0
    if (num.index > den.index) return 0.0;
    if (num.index < den.index) return std::numeric_limits<double>::infinity();
    const double r = num.coeff / den.coeff;
    return r * r;
}

LineClassification classify_line(const LineScenario& scn) {
    scn.validate();
    LineClassification cls;
    cls.boundary = scn.boundary;

    const double eta = power_ratio_limit(scn.rho2, scn.rho1);

    // canonical power laws; may be overwritten by the eta = 0 reduction
    PowerLaw r1 = scn.rho1, r2 = scn.rho2;
    double length = 0.0;
    bool case2 = false;

    if (scn.b == 0.0) {
        length = scn.boundary ? scn.T2 - scn.T1 : 2.0 * scn.T2;
    } else if (eta > 0.0 && std::isfinite(eta)) {
        case2 = true;
        length = scn.boundary ? scn.T2 - scn.T1
                              : 2.0 * std::min(scn.T2, scn.T1 / std::abs(scn.b));
    } else if (eta == 0.0) {
        // rho2 decays faster: substitute coordinates so the line becomes
        // vertical; the roles of the two correlation profiles swap and the
        // first one picks up the tilt scale.
        const double ab = std::abs(scn.b);
        r1 = scn.rho2;
        r1.coeff = scn.rho2.coeff * std::pow(ab, -scn.rho2.index);
        r2 = scn.rho1;
        length = scn.boundary ? ab * (scn.T2 - scn.T1)
                              : 2.0 * std::min(scn.T1, ab * scn.T2);
    } else {
        // eta = inf: shear (s,t) -> (s - b t, t); profiles unchanged
        length = scn.boundary ? scn.T2 - scn.T1
                              : 2.0 * std::min(scn.T1 / std::abs(scn.b), scn.T2);
    }

    cls.alpha1 = 2.0 * r1.index;
    cls.alpha2 = 2.0 * r2.index;
    cls.beta = 2.0 * scn.v.index;
    cls.c1 = r1.coeff;
    cls.c2 = r2.coeff;
    cls.cv = scn.v.coeff;
    cls.length = length;
    cls.degenerate = !(length > 0.0);

    const double gamma1 = power_ratio_limit(scn.v, r1);
    if (case2) {
        cls.eta = power_ratio_limit(r2, r1);
        cls.b_constant = scn.b * std::pow(cls.eta, -1.0 / cls.alpha1);
        if (gamma1 == 0.0) {
            cls.tag = LineCase::th22_gamma_zero;
        } else if (std::isfinite(gamma1)) {
            cls.tag = LineCase::th22_gamma_finite;
            cls.gamma1 = gamma1;
        } else {
            cls.tag = LineCase::th22_gamma_inf;
        }
    } else {
        if (gamma1 == 0.0) {
            cls.tag = LineCase::th21_gamma_zero;
        } else if (std::isfinite(gamma1)) {
            cls.tag = LineCase::th21_gamma_finite;
            cls.gamma1 = gamma1;
        } else {
            cls.tag = LineCase::th21_gamma_inf;
        }
    }
    return cls;
}

}  // namespace ridgetail
