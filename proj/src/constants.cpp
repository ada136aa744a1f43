#include "ridgetail/constants.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>

#include "ridgetail/fbm.hpp"
#include "ridgetail/grid.hpp"

namespace ridgetail {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kIndexTol = 1e-9;

long to_grid_index(double x, double h, bool round_up) {
    const double k = x / h;
    const double r = std::round(k);
    if (std::abs(k - r) <= kIndexTol * (1.0 + std::abs(k))) return static_cast<long>(r);
    return static_cast<long>(round_up ? std::ceil(k) : std::floor(k));
}

void validate_drift(const DriftSpec& drift) {
    if (drift.gamma < 0.0) throw std::domain_error("drift: gamma must be nonnegative");
    if (drift.kind == DriftKind::generalized && !(drift.beta > 0.0))
        throw std::domain_error("drift: beta must be positive");
}

// One (region, drift) pair compiled against a grid of spacing h = stride *
// h_fine. Index fields are in units of h; binding onto the engine's fine
// paths multiplies by stride. Evaluating a coarse functional on the fine
// path is exact (the restriction of the fine-grid law is the coarse-grid
// law) and couples the two step sizes pathwise, which is what makes the
// per-replication step extrapolation cheap.
struct Compiled {
    bool twod = false;
    double exact_value = -1.0;  // >= 0: resolved without simulation
    long stride = 1;

    long s_lo = 0, s_hi = 0;  // own units
    // 1-D
    std::vector<double> stat1;
    // 2-D
    long t_hi = 0;
    std::vector<long> row_lo;
    std::vector<long> row_w;
    std::vector<std::size_t> row_off;
    std::vector<double> row_t_term;
    std::vector<double> stat2;

    long s_base = 0;  // fine-grid start index of the union path

    double eval(const double* b1, const double* b2) const {
        double best = -std::numeric_limits<double>::infinity();
        if (!twod) {
            const double* p = b1 + (s_lo * stride - s_base);
            const std::size_t n = stat1.size();
            for (std::size_t k = 0; k < n; ++k) {
                const double v = kSqrt2 * p[k * stride] + stat1[k];
                if (v > best) best = v;
            }
        } else {
            for (long j = 0; j <= t_hi; ++j) {
                const long w = row_w[j];
                if (w <= 0) continue;
                const double* p = b1 + (row_lo[j] * stride - s_base);
                const double* st = stat2.data() + row_off[j];
                double m = -std::numeric_limits<double>::infinity();
                for (long k = 0; k < w; ++k) {
                    const double v = kSqrt2 * p[k * stride] + st[k];
                    if (v > m) m = v;
                }
                const double v = m + kSqrt2 * b2[j * stride] + row_t_term[j];
                if (v > best) best = v;
            }
        }
        return std::exp(best);
    }
};

Compiled compile(double alpha1, double alpha2, const RegionSpec& region, const DriftSpec& drift,
                 double h, long stride) {
    validate_drift(drift);
    if (!(h > 0.0)) throw std::domain_error("functional: step must be positive");

    Compiled c;
    c.stride = stride;
    if (std::isinf(drift.gamma)) {
        // gamma = inf: the limit constant collapses to 1 by convention
        c.exact_value = 1.0;
        return c;
    }

    auto drift_1d = [&](double x) -> double {
        switch (drift.kind) {
            case DriftKind::pickands:
                return 0.0;
            case DriftKind::piterbarg:
                return drift.gamma * std::pow(std::abs(x), alpha1);
            case DriftKind::generalized:
                return drift.gamma * std::pow(std::abs(x), drift.beta);
        }
        return 0.0;
    };

    if (region.kind == RegionKind::interval) {
        if (region.s1 > region.s2) throw std::domain_error("region: interval requires s1 <= s2");
        if (region.s1 == region.s2) {
            if (region.s1 == 0.0) {
                c.exact_value = 1.0;  // exp(W(0) - 0) = 1 surely
                return c;
            }
            throw std::domain_error("region: degenerate interval away from 0");
        }
        const long lo = to_grid_index(region.s1, h, false);
        const long hi = to_grid_index(region.s2, h, true);
        if (std::abs(lo * h - region.s1) > 1e-9 * (1.0 + std::abs(region.s1)) ||
            std::abs(hi * h - region.s2) > 1e-9 * (1.0 + std::abs(region.s2)))
            throw std::domain_error("functional: step does not divide the interval");
        c.twod = false;
        c.s_lo = lo;
        c.s_hi = hi;
        c.stat1.resize(hi - lo + 1);
        for (long i = lo; i <= hi; ++i) {
            const double x = i * h;
            c.stat1[i - lo] = -std::pow(std::abs(x), alpha1) - drift_1d(x);
        }
        return c;
    }

    // strip / half strip
    if (!(region.S > 0.0)) throw std::domain_error("region: strip requires S > 0");
    if (drift.kind == DriftKind::piterbarg)
        throw std::domain_error("functional: piterbarg drift is 1-D only");
    const long nS = to_grid_index(region.S, h, true);
    if (std::abs(nS * h - region.S) > 1e-9 * (1.0 + region.S))
        throw std::domain_error("functional: step does not divide S");

    const bool half = region.kind == RegionKind::half_strip;
    const double b = region.b;

    c.twod = true;
    c.t_hi = nS;
    c.row_lo.resize(nS + 1);
    c.row_w.resize(nS + 1);
    c.row_off.resize(nS + 1);
    c.row_t_term.resize(nS + 1);
    c.s_lo = std::numeric_limits<long>::max();
    c.s_hi = std::numeric_limits<long>::min();

    std::size_t off = 0;
    for (long j = 0; j <= nS; ++j) {
        const double t = j * h;
        const double lo_val = (half ? 0.0 : -region.S) - b * t;
        const double hi_val = region.S - b * t;
        const double tol = 1e-9 * (1.0 + std::abs(lo_val) + std::abs(hi_val));
        const long lo = static_cast<long>(std::ceil(lo_val / h - tol / h));
        const long hi = static_cast<long>(std::floor(hi_val / h + tol / h));
        c.row_lo[j] = lo;
        c.row_w[j] = hi - lo + 1;
        c.row_off[j] = off;
        c.row_t_term[j] = -std::pow(t, alpha2);
        if (c.row_w[j] > 0) {
            c.s_lo = std::min(c.s_lo, lo);
            c.s_hi = std::max(c.s_hi, hi);
            off += static_cast<std::size_t>(c.row_w[j]);
        }
    }
    c.stat2.resize(off);
    for (long j = 0; j <= nS; ++j) {
        const double t = j * h;
        double* st = c.stat2.data() + c.row_off[j];
        for (long k = 0; k < c.row_w[j]; ++k) {
            const double s = (c.row_lo[j] + k) * h;
            double d = 0.0;
            if (drift.kind == DriftKind::generalized)
                d = drift.gamma * std::pow(std::abs(s + drift.b * t), drift.beta);
            st[k] = -std::pow(std::abs(s), alpha1) - d;
        }
    }
    return c;
}

// Monte Carlo engine over a shared pair of axis paths. Each compiled
// functional is one output column; extra columns are arbitrary linear
// combinations of the functional values, evaluated per replication so their
// standard errors need no independence assumptions.
struct LinComb {
    std::vector<std::pair<int, double>> terms;  // (column, weight)
};

struct Engine {
    std::vector<Compiled> fns;
    std::unique_ptr<PathSampler> s_sampler;
    std::unique_ptr<PathSampler> t_sampler;
    bool twod = false;
    long s_base = 0;
    double h_fine = 0.0;

    Engine(double alpha1, double alpha2, std::span<const Compiled> compiled, double h_fine_in)
        : fns(compiled.begin(), compiled.end()), h_fine(h_fine_in) {
        if (fns.empty()) throw std::domain_error("functional: empty spec list");
        bool any_sim = false;
        long s_lo = 0, s_hi = 0, t_hi = 0;
        for (const Compiled& c : fns) {
            if (c.exact_value >= 0.0) continue;
            if (!any_sim) {
                twod = c.twod;
                s_lo = c.s_lo * c.stride;
                s_hi = c.s_hi * c.stride;
                t_hi = c.twod ? c.t_hi * c.stride : 0;
            } else {
                if (twod != c.twod)
                    throw std::logic_error("functional: cannot couple 1-D and 2-D regions");
                s_lo = std::min(s_lo, c.s_lo * c.stride);
                s_hi = std::max(s_hi, c.s_hi * c.stride);
                if (c.twod) t_hi = std::max(t_hi, c.t_hi * c.stride);
            }
            any_sim = true;
        }
        if (!any_sim) return;
        s_base = s_lo;
        for (Compiled& c : fns) c.s_base = s_lo;
        GridSpec s_grid{s_lo * h_fine, s_hi * h_fine, static_cast<int>(s_hi - s_lo + 1)};
        s_sampler = std::make_unique<PathSampler>(s_grid, alpha1);
        if (twod) {
            GridSpec t_grid{0.0, t_hi * h_fine, static_cast<int>(t_hi + 1)};
            t_sampler = std::make_unique<PathSampler>(t_grid, alpha2);
        }
    }

    bool needs_simulation() const { return s_sampler != nullptr; }
};

struct EngineWs {
    PathWorkspace pw;
    std::vector<double> b1, b2;
};

McMoments engine_moments(const Engine& eng, std::span<const LinComb> extras, long reps,
                         std::uint64_t seed, int threads) {
    const int n_fns = static_cast<int>(eng.fns.size());
    const int n_vals = n_fns + static_cast<int>(extras.size());
    McOptions opt;
    opt.reps = reps;
    opt.threads = threads;

    auto make_ws = [&]() {
        EngineWs ws;
        if (eng.s_sampler) ws.b1.resize(eng.s_sampler->grid().n_points);
        if (eng.t_sampler) ws.b2.resize(eng.t_sampler->grid().n_points);
        return ws;
    };
    auto fn = [&](long rep, EngineWs& ws, std::span<double> out) {
        SubstreamRng rng(seed, static_cast<std::uint64_t>(rep));
        if (eng.s_sampler) eng.s_sampler->sample(rng, ws.b1, ws.pw);
        if (eng.t_sampler) eng.t_sampler->sample(rng, ws.b2, ws.pw);
        for (int v = 0; v < n_fns; ++v) {
            const Compiled& c = eng.fns[v];
            out[v] = c.exact_value >= 0.0 ? c.exact_value
                                          : c.eval(ws.b1.data(), eng.twod ? ws.b2.data() : nullptr);
        }
        for (std::size_t e = 0; e < extras.size(); ++e) {
            double acc = 0.0;
            for (const auto& [col, wgt] : extras[e].terms) acc += wgt * out[col];
            out[n_fns + e] = acc;
        }
    };
    return run_mc(opt, n_vals, make_ws, fn);
}

void check_reps(long reps) {
    if (reps < 100) throw std::domain_error("functional: reps must be at least 100");
}

double extrap_weight(double alpha) { return 1.0 / (std::pow(2.0, alpha / 2.0) - 1.0); }

}  // namespace

std::pair<double, double> extrapolate_step(double v_h, double se_h, double v_h2, double se_h2,
                                           double alpha) {
    const double c = extrap_weight(alpha);
    const double value = v_h2 + (v_h2 - v_h) * c;
    const double se = std::hypot((1.0 + c) * se_h2, c * se_h);
    return {value, se};
}

ConstantEstimate functional_expectation(double alpha1, double alpha2, const RegionSpec& region,
                                        const DriftSpec& drift, double step, long reps,
                                        std::uint64_t seed, int threads) {
    std::pair<RegionSpec, DriftSpec> one{region, drift};
    auto res = functional_expectation_coupled(alpha1, alpha2, {&one, 1}, step, reps, seed, threads);
    return res[0];
}

std::vector<ConstantEstimate> functional_expectation_coupled(
    double alpha1, double alpha2,
    std::span<const std::pair<RegionSpec, DriftSpec>> functionals, double step, long reps,
    std::uint64_t seed, int threads) {
    std::vector<Compiled> compiled;
    for (const auto& [region, drift] : functionals)
        compiled.push_back(compile(alpha1, alpha2, region, drift, step, 1));
    Engine eng(alpha1, alpha2, compiled, step);

    std::vector<ConstantEstimate> out;
    if (!eng.needs_simulation()) {
        for (const auto& c : eng.fns) {
            ConstantEstimate est;
            est.value = c.exact_value;
            est.raw_value = c.exact_value;
            est.step = step;
            out.push_back(est);
        }
        return out;
    }
    check_reps(reps);
    const McMoments m = engine_moments(eng, {}, reps, seed, threads);
    for (std::size_t i = 0; i < functionals.size(); ++i) {
        ConstantEstimate est;
        est.value = m.mean[i];
        est.se = eng.fns[i].exact_value >= 0.0 ? 0.0 : m.se[i];
        est.raw_value = est.value;
        est.raw_se = est.se;
        est.step = step;
        est.reps = reps;
        const RegionSpec& r = functionals[i].first;
        est.S = r.kind == RegionKind::interval ? r.s2 : r.S;
        out.push_back(est);
    }
    return out;
}

namespace {

// Shared machinery for the step-extrapolated estimators. Every requested
// (region, drift) pair is compiled twice against one set of fine-step paths:
// at step/2 (stride 1) and at step (stride 2, the sub-grid). Extra columns
// then form the requested combinations, including the Richardson
// extrapolation in step^(alpha/2), per replication.
struct ExtrapRun {
    McMoments moments;
    int n;           // number of (region, drift) pairs
    double c_extrap;  // Richardson weight
    // column layout: [0, n): fine; [n, 2n): coarse; then extras in order
};

ExtrapRun run_extrapolated(double alpha1, double alpha2,
                           std::span<const std::pair<RegionSpec, DriftSpec>> functionals,
                           std::span<const LinComb> extras, const EstimatorOptions& opt) {
    check_reps(opt.reps);
    const double h_fine = opt.step / 2.0;
    std::vector<Compiled> compiled;
    for (const auto& [region, drift] : functionals)
        compiled.push_back(compile(alpha1, alpha2, region, drift, h_fine, 1));
    for (const auto& [region, drift] : functionals)
        compiled.push_back(compile(alpha1, alpha2, region, drift, opt.step, 2));
    Engine eng(alpha1, alpha2, compiled, h_fine);

    ExtrapRun run;
    run.n = static_cast<int>(functionals.size());
    run.c_extrap = extrap_weight(alpha1);
    run.moments = engine_moments(eng, extras, opt.reps, opt.seed, opt.threads);
    return run;
}

// extrapolation of functional i as a per-replication linear combination
LinComb extrap_column(int i, int n, double c) {
    return {{{i, 1.0 + c}, {i + n, -c}}};
}

// extrapolated difference (top - prev), used by the rate estimators
LinComb extrap_diff_column(int top, int prev, int n, double c) {
    return {{{top, 1.0 + c}, {prev, -(1.0 + c)}, {top + n, -c}, {prev + n, c}}};
}

}  // namespace

ConstantEstimate pickands_finite(double alpha, double S, const EstimatorOptions& opt) {
    if (!(S >= 0.0)) throw std::domain_error("pickands_finite: S must be nonnegative");
    ConstantEstimate est;
    est.step = opt.step;
    est.extrapolated = true;
    if (S == 0.0) {
        est.value = 1.0;
        est.raw_value = 1.0;
        return est;
    }
    std::vector<std::pair<RegionSpec, DriftSpec>> fns{
        {RegionSpec::interval(0.0, S), DriftSpec::pickands()}};
    const double c = extrap_weight(alpha);
    std::vector<LinComb> extras{extrap_column(0, 1, c)};
    const ExtrapRun run = run_extrapolated(alpha, alpha, fns, extras, opt);
    est.value = run.moments.mean[2];
    est.se = run.moments.se[2];
    est.raw_value = run.moments.mean[0];
    est.raw_se = run.moments.se[0];
    est.S = S;
    est.reps = opt.reps;
    return est;
}

namespace {

struct LadderOutcome {
    ConstantEstimate estimate;        // extrapolated slope over the top rung
    std::vector<double> rung_values;  // fine-step functional values
    std::vector<double> rung_ses;
};

LadderOutcome ladder_rate(double alpha1, double alpha2,
                          const std::vector<std::pair<RegionSpec, DriftSpec>>& rungs,
                          std::span<const double> S_ladder, const EstimatorOptions& opt) {
    const std::size_t n = rungs.size();
    if (n < 2) throw std::domain_error("ladder: need at least 2 rungs");
    for (std::size_t i = 1; i < S_ladder.size(); ++i)
        if (!(S_ladder[i] > S_ladder[i - 1]))
            throw std::domain_error("ladder: S values must be increasing");

    const double dS = S_ladder[n - 1] - S_ladder[n - 2];
    const int top = static_cast<int>(n - 1), prev = static_cast<int>(n - 2);
    const double c = extrap_weight(alpha1);
    std::vector<LinComb> extras{
        {{{top, 1.0}, {prev, -1.0}}},              // fine-step top difference
        extrap_diff_column(top, prev, static_cast<int>(n), c),
    };
    const ExtrapRun run = run_extrapolated(alpha1, alpha2, rungs, extras, opt);
    const int base = 2 * static_cast<int>(n);

    LadderOutcome out;
    out.rung_values.assign(run.moments.mean.begin(), run.moments.mean.begin() + n);
    out.rung_ses.assign(run.moments.se.begin(), run.moments.se.begin() + n);
    out.estimate.value = run.moments.mean[base + 1] / dS;
    out.estimate.se = run.moments.se[base + 1] / dS;
    out.estimate.raw_value = run.moments.mean[base] / dS;
    out.estimate.raw_se = run.moments.se[base] / dS;
    out.estimate.S = S_ladder[n - 1];
    out.estimate.step = opt.step;
    out.estimate.reps = opt.reps;
    out.estimate.extrapolated = true;
    return out;
}

}  // namespace

ConstantEstimate pickands(double alpha, std::span<const double> S_ladder,
                          const EstimatorOptions& opt) {
    if (S_ladder.size() < 2) throw std::domain_error("pickands: ladder needs >= 2 entries");
    std::vector<std::pair<RegionSpec, DriftSpec>> rungs;
    for (double S : S_ladder)
        rungs.emplace_back(RegionSpec::interval(0.0, S), DriftSpec::pickands());
    return ladder_rate(alpha, alpha, rungs, S_ladder, opt).estimate;
}

ConstantEstimate piterbarg(double alpha, double gamma, double S, bool one_sided,
                           const EstimatorOptions& opt) {
    if (std::isinf(gamma) && gamma > 0) {
        ConstantEstimate est;
        est.value = 1.0;
        est.extrapolated = true;
        est.step = opt.step;
        return est;
    }
    if (!(gamma > 0.0)) throw std::domain_error("piterbarg: gamma must be positive");
    if (!(S > 0.0)) throw std::domain_error("piterbarg: S must be positive");

    // internal convergence ladder {S/4, S/2, S}, dropping rungs finer than a
    // few grid steps; rung ends snapped onto the step grid
    std::vector<double> ladder;
    for (double s : {S / 4.0, S / 2.0, S})
        if (s >= 4.0 * opt.step) ladder.push_back(std::round(s / opt.step) * opt.step);
    if (ladder.empty()) ladder.push_back(std::round(S / opt.step) * opt.step);

    std::vector<std::pair<RegionSpec, DriftSpec>> fns;
    for (double s : ladder)
        fns.emplace_back(RegionSpec::interval(one_sided ? 0.0 : -s, s),
                         DriftSpec::piterbarg(gamma));
    const std::size_t n = fns.size();
    const int top = static_cast<int>(n - 1);
    const double c = extrap_weight(alpha);

    std::vector<LinComb> extras{extrap_column(top, static_cast<int>(n), c)};
    if (n >= 2) extras.push_back({{{top, 1.0}, {top - 1, -1.0}}});  // fine top difference

    const ExtrapRun run = run_extrapolated(alpha, alpha, fns, extras, opt);
    const int base = 2 * static_cast<int>(n);

    ConstantEstimate est;
    est.value = run.moments.mean[base];
    est.se = run.moments.se[base];
    est.raw_value = run.moments.mean[top];
    est.raw_se = run.moments.se[top];
    est.S = S;
    est.step = opt.step;
    est.reps = opt.reps;
    est.extrapolated = true;
    if (n >= 2) {
        const double diff = std::abs(run.moments.mean[base + 1]);
        const double tol = std::max(2.0 * run.moments.se[base + 1],
                                    1e-3 * std::abs(run.moments.mean[top]));
        est.converged = diff < tol;
    } else {
        est.converged = false;  // not assessable
    }
    return est;
}

ConstantEstimate gen_pickands_rate(double alpha, double gamma, double b, bool one_sided,
                                   std::span<const double> S_ladder,
                                   const EstimatorOptions& opt) {
    if (!(gamma > 0.0) || std::isinf(gamma))
        throw std::domain_error("gen_pickands_rate: gamma must be positive and finite");
    if (S_ladder.size() < 2)
        throw std::domain_error("gen_pickands_rate: ladder needs >= 2 entries");
    std::vector<std::pair<RegionSpec, DriftSpec>> rungs;
    for (double S : S_ladder) {
        const RegionSpec region =
            one_sided ? RegionSpec::half_strip(S, b) : RegionSpec::strip(S, b);
        rungs.emplace_back(region, DriftSpec::generalized(gamma, b, alpha));
    }
    LadderOutcome out = ladder_rate(alpha, alpha, rungs, S_ladder, opt);
    // flag a rate whose top-rung slope still disagrees with the previous
    // slope beyond noise (assessable with >= 3 rungs)
    if (S_ladder.size() >= 3) {
        const std::size_t n = out.rung_values.size();
        const double s_top = (out.rung_values[n - 1] - out.rung_values[n - 2]) /
                             (S_ladder[n - 1] - S_ladder[n - 2]);
        const double s_prev = (out.rung_values[n - 2] - out.rung_values[n - 3]) /
                              (S_ladder[n - 2] - S_ladder[n - 3]);
        const double tol =
            std::max(2.0 * std::hypot(out.rung_ses[n - 1], out.rung_ses[n - 2],
                                      out.rung_ses[n - 3]),
                     1e-3 * std::abs(s_top));
        out.estimate.converged = std::abs(s_top - s_prev) < tol;
    }
    return out.estimate;
}

}  // namespace ridgetail
