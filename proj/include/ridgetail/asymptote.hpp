#pragma once

#include <string>

#include "ridgetail/provider.hpp"
#include "ridgetail/scenario.hpp"
#include "ridgetail/special.hpp"

namespace ridgetail {

// Canonical tail asymptote pi(u) ~ K * u^p * Psi(u).
struct TailAsymptote {
    double K = 0.0;
    double K_se = 0.0;
    double p = 0.0;
    std::string case_tag;
    bool converged = true;   // false if a constant or quadrature failed to settle
    bool degenerate = false; // zero-length segment: K = 0

    double evaluate(double u) const { return K * std::pow(u, p) * gaussian_tail(u); }
};

// Tail asymptote for a line scenario; constants come from the provider.
TailAsymptote line_asymptote(const LineScenario& scn, ConstantsProvider& constants);

// Tail asymptote for a curve scenario. The t-integral uses Gauss-Legendre
// doubling to quad_tol; t-dependent constants are estimated at the
// quadrature nodes through the provider.
TailAsymptote curve_asymptote(const CurveScenario& scn, ConstantsProvider& constants,
                              double quad_tol = 1e-8);

// Exceedance asymptote for the sum of two independent fBms over the unit
// level set of its variance, alpha1, alpha2 in (0, 2). Arguments may come in
// either order; symmetry swaps them so the first index is the smaller one.
TailAsymptote fbm_sum_asymptote(double alpha1, double alpha2, ConstantsProvider& constants);

}  // namespace ridgetail
