#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "ridgetail/constants.hpp"

namespace ridgetail {

// Source of Pickands / Piterbarg / tilted-strip constants for the asymptote
// formulas: either live Monte Carlo or a pinned table for deterministic
// formula checks. Implementations must be safe for concurrent calls.
class ConstantsProvider {
  public:
    struct Value {
        double value = 0.0;
        double se = 0.0;
        bool converged = true;
    };

    virtual ~ConstantsProvider() = default;
    virtual Value pickands_const(double alpha) = 0;
    virtual Value piterbarg_const(double alpha, double gamma, bool one_sided) = 0;
    virtual Value gen_rate_const(double alpha, double gamma, double b, bool one_sided) = 0;
};

// Monte Carlo provider with a memo table keyed by the rounded parameters.
// Calls that differ only in (gamma, b) share the same derived seed, so the
// underlying paths are common random numbers and gamma-dependence inside
// curve integrands stays smooth.
class McConstantsProvider : public ConstantsProvider {
  public:
    struct Settings {
        double step = 0.05;
        long reps = 100000;
        int threads = 0;
        std::uint64_t seed = 1;
        std::vector<double> ladder_1d{2.0, 4.0, 8.0};
        std::vector<double> ladder_strip{2.0, 4.0};
        double piterbarg_S = 8.0;
    };

    explicit McConstantsProvider(Settings settings) : settings_(std::move(settings)) {}

    Value pickands_const(double alpha) override;
    Value piterbarg_const(double alpha, double gamma, bool one_sided) override;
    Value gen_rate_const(double alpha, double gamma, double b, bool one_sided) override;

    const Settings& settings() const { return settings_; }

    static long long quantize(double x);  // 1e-12 cache rounding

  private:
    using Key = std::tuple<int, long long, long long, long long, int>;

    Settings settings_;
    std::mutex mu_;
    std::map<Key, Value> cache_;
};

// Fixed table; lookups are rounded to 1e-12 in every parameter. Unknown
// entries throw, so formula tests cannot silently fall back to simulation.
// Populate before use; lookups are read-only and safe to share.
class PinnedConstantsProvider : public ConstantsProvider {
  public:
    void set_pickands(double alpha, double value);
    void set_piterbarg(double alpha, double gamma, bool one_sided, double value);
    void set_gen_rate(double alpha, double gamma, double b, bool one_sided, double value);

    Value pickands_const(double alpha) override;
    Value piterbarg_const(double alpha, double gamma, bool one_sided) override;
    Value gen_rate_const(double alpha, double gamma, double b, bool one_sided) override;

    // classical exactly-known values: H_1 = 1, H_2 = 1/sqrt(pi), hat-P_1^1 = 2
    static PinnedConstantsProvider classical();

  private:
    using Key = std::tuple<int, long long, long long, long long, int>;
    std::map<Key, double> table_;
};

}  // namespace ridgetail
