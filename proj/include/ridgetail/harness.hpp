#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ridgetail/asymptote.hpp"
#include "ridgetail/provider.hpp"

namespace ridgetail {

// Plain Monte Carlo estimate of P{ sup over the unit variance-level set of
// B_a1(s) + B_a2(t) > u }.
struct SupTailEstimate {
    double u = 0.0;
    double p_hat = 0.0;
    double se = 0.0;  // sqrt(p (1-p) / reps)
    int grid_n = 0;
    long reps = 0;
    bool weak = false;  // fewer than ~10 expected hits
};

// grid_n is the number of subintervals per axis: the field is simulated on
// the (grid_n + 1)^2 points of [-1,1]^2, so doubling grid_n refines the grid
// in place and grid ladders like {100, 200, 400} are nested.
SupTailEstimate mc_sup_tail(double alpha1, double alpha2, double u, int grid_n, long reps,
                            std::uint64_t seed, int threads = 0);

struct ExpansionReport {
    std::vector<double> deltas;
    std::vector<double> max_rel_err;  // one entry per delta
};

// Local variance expansion near the unit level set, approached either in t
// at fixed s (cap |s| <= 0.9) or in s at fixed t (cap |t| <= 0.9). Sample
// points are a deterministic low-discrepancy sweep along the curve; each is
// placed at distance delta inside the domain.
ExpansionReport check_variance_expansion(double alpha1, double alpha2,
                                         std::span<const double> deltas, int n_points,
                                         bool approach_in_t);

// Correlation expansion near the level set: maximum deviation of
// 2(1 - r) / (|ds|^a1 + |dt|^a2) from 1 over deterministic near-curve pairs
// with separation <= delta.
ExpansionReport check_correlation_expansion(double alpha1, double alpha2,
                                            std::span<const double> deltas, int n_pairs);

struct CompareRow {
    double u = 0.0;
    int grid_n = 0;
    double p_hat = 0.0;
    double se = 0.0;
    double asym = 0.0;
    double asym_se = 0.0;
    double ratio = 0.0;
    bool weak = false;
    bool trend_break = false;  // |ratio-1| grew with u beyond the combined CI
};

struct CompareTable {
    std::vector<CompareRow> rows;
    TailAsymptote asymptote;
};

// Monte Carlo vs asymptote comparison. The grid ladder must be nested
// (every entry divides the largest); all grids are evaluated on the same
// simulated paths, so p_hat is nondecreasing in grid_n surely per seed.
CompareTable compare_run(double alpha1, double alpha2, std::span<const double> u_list,
                         std::span<const int> grid_ladder, long reps, std::uint64_t seed,
                         ConstantsProvider& constants, int threads = 0);

}  // namespace ridgetail
