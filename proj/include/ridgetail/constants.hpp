#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "ridgetail/mc.hpp"

namespace ridgetail {

// Extra drift subtracted from the base field W(s,t) = sqrt(2)B1(s) +
// sqrt(2)B2(t) - |s|^a1 - |t|^a2 inside the expectation functionals.
//   pickands:    none beyond W itself
//   piterbarg:   gamma * |t|^alpha on the active 1-D coordinate
//   generalized: gamma * |s + b t|^beta
// gamma = +inf encodes the convention that the corresponding limit constant
// equals 1; such functionals are resolved symbolically, never simulated.
enum class DriftKind { pickands, piterbarg, generalized };

struct DriftSpec {
    DriftKind kind = DriftKind::pickands;
    double gamma = 0.0;
    double b = 0.0;
    double beta = 1.0;

    static DriftSpec pickands() { return {}; }
    static DriftSpec piterbarg(double gamma) {
        return {DriftKind::piterbarg, gamma, 0.0, 0.0};
    }
    static DriftSpec generalized(double gamma, double b, double beta) {
        return {DriftKind::generalized, gamma, b, beta};
    }
};

// Supremum region. Intervals are 1-D (the second coordinate is inactive);
// strips are {|s + b t| <= S, 0 <= t <= S}, half strips {0 <= s + b t <= S,
// 0 <= t <= S}.
enum class RegionKind { interval, strip, half_strip };

struct RegionSpec {
    RegionKind kind = RegionKind::interval;
    double s1 = 0.0, s2 = 0.0;  // interval bounds
    double S = 0.0;             // strip size
    double b = 0.0;             // strip tilt

    static RegionSpec interval(double lo, double hi) {
        RegionSpec r;
        r.kind = RegionKind::interval;
        r.s1 = lo;
        r.s2 = hi;
        return r;
    }
    static RegionSpec strip(double S, double b) {
        RegionSpec r;
        r.kind = RegionKind::strip;
        r.S = S;
        r.b = b;
        return r;
    }
    static RegionSpec half_strip(double S, double b) {
        RegionSpec r;
        r.kind = RegionKind::half_strip;
        r.S = S;
        r.b = b;
        return r;
    }
};

struct ConstantEstimate {
    double value = 0.0;
    double se = 0.0;
    double S = 0.0;
    double step = 0.0;
    long reps = 0;
    bool extrapolated = false;
    bool converged = true;
    // finest-step estimate before the step extrapolation
    double raw_value = 0.0;
    double raw_se = 0.0;
};

struct EstimatorOptions {
    double step = 0.05;
    long reps = 100000;
    int threads = 0;
    std::uint64_t seed = 1;
};

// E[ exp( sup over the region of W - drift ) ] at a fixed grid step.
// Plain Monte Carlo: one masked grid supremum per replication. Deterministic
// in (arguments, seed) and independent of the thread count.
ConstantEstimate functional_expectation(double alpha1, double alpha2, const RegionSpec& region,
                                        const DriftSpec& drift, double step, long reps,
                                        std::uint64_t seed, int threads = 0);

// Same, for several (region, drift) pairs evaluated on common simulated
// paths. Enlarging the region or lowering the drift then increases every
// per-replication supremum surely, which is what the coupled monotonicity
// properties rely on.
std::vector<ConstantEstimate> functional_expectation_coupled(
    double alpha1, double alpha2,
    std::span<const std::pair<RegionSpec, DriftSpec>> functionals, double step, long reps,
    std::uint64_t seed, int threads = 0);

// H_alpha[0,S]: step-extrapolated finite-horizon Pickands functional.
ConstantEstimate pickands_finite(double alpha, double S, const EstimatorOptions& opt);

// H_alpha: rate estimate, slope of H[0,S] over the top ladder rung with the
// rungs coupled on common paths, then extrapolated in step^(alpha/2).
ConstantEstimate pickands(double alpha, std::span<const double> S_ladder,
                          const EstimatorOptions& opt);

// P_alpha^gamma (two-sided) or hat-P_alpha^gamma (one-sided): value at the
// largest rung of an internal S-ladder with a convergence flag.
ConstantEstimate piterbarg(double alpha, double gamma, double S, bool one_sided,
                           const EstimatorOptions& opt);

// H_alpha^{gamma,b} or hat-H_alpha^{gamma,b}: rate of the tilted-strip
// functional, slope over the top ladder rung.
ConstantEstimate gen_pickands_rate(double alpha, double gamma, double b, bool one_sided,
                                   std::span<const double> S_ladder,
                                   const EstimatorOptions& opt);

// Richardson step extrapolation assuming bias of order step^(alpha/2).
std::pair<double, double> extrapolate_step(double v_h, double se_h, double v_h2, double se_h2,
                                           double alpha);

}  // namespace ridgetail
