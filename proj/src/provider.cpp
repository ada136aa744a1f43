#include "ridgetail/provider.hpp"

#include <cmath>
#include <stdexcept>

#include "ridgetail/rng.hpp"

namespace ridgetail {

namespace {

enum Kind : int { kPickands = 0, kPiterbarg = 1, kGenRate = 2 };

std::uint64_t kind_seed(std::uint64_t seed, int kind, double alpha, bool one_sided) {
    // Common random numbers across gamma and b: the derived seed depends on
    // the constant family and alpha only.
    const auto a = static_cast<std::uint64_t>(std::llround(alpha * 4096.0));
    return derive_seed(seed, (static_cast<std::uint64_t>(kind) << 32) ^ (a << 1) ^
                                 static_cast<std::uint64_t>(one_sided));
}

}  // namespace

long long McConstantsProvider::quantize(double x) {
    if (std::isinf(x)) return x > 0 ? std::numeric_limits<long long>::max()
                                    : std::numeric_limits<long long>::min();
    return std::llround(x * 1e12);
}

ConstantsProvider::Value McConstantsProvider::pickands_const(double alpha) {
    const Key key{kPickands, quantize(alpha), 0, 0, 0};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    EstimatorOptions opt;
    opt.step = settings_.step;
    opt.reps = settings_.reps;
    opt.threads = settings_.threads;
    opt.seed = kind_seed(settings_.seed, kPickands, alpha, false);
    const ConstantEstimate est = pickands(alpha, settings_.ladder_1d, opt);
    const Value v{est.value, est.se, est.converged};
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(key, v).first->second;
}

ConstantsProvider::Value McConstantsProvider::piterbarg_const(double alpha, double gamma,
                                                              bool one_sided) {
    if (std::isinf(gamma) && gamma > 0) return {1.0, 0.0, true};
    const Key key{kPiterbarg, quantize(alpha), quantize(gamma), 0, one_sided ? 1 : 0};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    EstimatorOptions opt;
    opt.step = settings_.step;
    opt.reps = settings_.reps;
    opt.threads = settings_.threads;
    opt.seed = kind_seed(settings_.seed, kPiterbarg, alpha, one_sided);
    const ConstantEstimate est = piterbarg(alpha, gamma, settings_.piterbarg_S, one_sided, opt);
    const Value v{est.value, est.se, est.converged};
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(key, v).first->second;
}

ConstantsProvider::Value McConstantsProvider::gen_rate_const(double alpha, double gamma, double b,
                                                             bool one_sided) {
    if (std::isinf(gamma) && gamma > 0)
        throw std::domain_error("gen_rate_const: gamma = inf is resolved by the caller");
    const Key key{kGenRate, quantize(alpha), quantize(gamma), quantize(b), one_sided ? 1 : 0};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    EstimatorOptions opt;
    opt.step = settings_.step;
    opt.reps = settings_.reps;
    opt.threads = settings_.threads;
    opt.seed = kind_seed(settings_.seed, kGenRate, alpha, one_sided);
    const ConstantEstimate est =
        gen_pickands_rate(alpha, gamma, b, one_sided, settings_.ladder_strip, opt);
    const Value v{est.value, est.se, est.converged};
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(key, v).first->second;
}

void PinnedConstantsProvider::set_pickands(double alpha, double value) {
    table_[{kPickands, McConstantsProvider::quantize(alpha), 0, 0, 0}] = value;
}

void PinnedConstantsProvider::set_piterbarg(double alpha, double gamma, bool one_sided,
                                            double value) {
    table_[{kPiterbarg, McConstantsProvider::quantize(alpha),
            McConstantsProvider::quantize(gamma), 0, one_sided ? 1 : 0}] = value;
}

void PinnedConstantsProvider::set_gen_rate(double alpha, double gamma, double b, bool one_sided,
                                           double value) {
    table_[{kGenRate, McConstantsProvider::quantize(alpha), McConstantsProvider::quantize(gamma),
            McConstantsProvider::quantize(b), one_sided ? 1 : 0}] = value;
}

ConstantsProvider::Value PinnedConstantsProvider::pickands_const(double alpha) {
    auto it = table_.find({kPickands, McConstantsProvider::quantize(alpha), 0, 0, 0});
    if (it == table_.end()) throw std::out_of_range("pinned table: no Pickands entry");
    return {it->second, 0.0, true};
}

ConstantsProvider::Value PinnedConstantsProvider::piterbarg_const(double alpha, double gamma,
                                                                  bool one_sided) {
    if (std::isinf(gamma) && gamma > 0) return {1.0, 0.0, true};
    auto it = table_.find({kPiterbarg, McConstantsProvider::quantize(alpha),
                           McConstantsProvider::quantize(gamma), 0, one_sided ? 1 : 0});
    if (it == table_.end()) throw std::out_of_range("pinned table: no Piterbarg entry");
    return {it->second, 0.0, true};
}

ConstantsProvider::Value PinnedConstantsProvider::gen_rate_const(double alpha, double gamma,
                                                                 double b, bool one_sided) {
    auto it = table_.find({kGenRate, McConstantsProvider::quantize(alpha),
                           McConstantsProvider::quantize(gamma),
                           McConstantsProvider::quantize(b), one_sided ? 1 : 0});
    if (it == table_.end()) throw std::out_of_range("pinned table: no strip-rate entry");
    return {it->second, 0.0, true};
}

PinnedConstantsProvider PinnedConstantsProvider::classical() {
    PinnedConstantsProvider p;
    p.set_pickands(1.0, 1.0);
    p.set_pickands(2.0, 1.0 / std::sqrt(M_PI));
    p.set_piterbarg(1.0, 1.0, true, 2.0);
    return p;
}

}  // namespace ridgetail
