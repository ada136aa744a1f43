#include "ridgetail/field.hpp"

#include <cmath>
#include <vector>

namespace ridgetail {

namespace {

FieldSample simulate_separable(double alpha1, double alpha2, const GridSpec& s_grid,
                               const GridSpec& t_grid, std::uint64_t seed, bool with_drift) {
    s_grid.validate();
    t_grid.validate();
    PathSampler s_sampler(s_grid, alpha1);
    PathSampler t_sampler(t_grid, alpha2);
    PathWorkspace ws;
    SubstreamRng rng(seed, 0);

    std::vector<double> b1(s_grid.n_points), b2(t_grid.n_points);
    s_sampler.sample(rng, b1, ws);
    t_sampler.sample(rng, b2, ws);

    const double sqrt2 = with_drift ? std::sqrt(2.0) : 1.0;
    FieldSample field;
    field.s_grid = s_grid;
    field.t_grid = t_grid;
    field.values.resize(s_grid.n_points, t_grid.n_points);
    for (int i = 0; i < s_grid.n_points; ++i) {
        const double si = s_grid.point(i);
        const double row = sqrt2 * b1[i] - (with_drift ? std::pow(std::abs(si), alpha1) : 0.0);
        for (int j = 0; j < t_grid.n_points; ++j) {
            const double tj = t_grid.point(j);
            field.values(i, j) =
                row + sqrt2 * b2[j] - (with_drift ? std::pow(std::abs(tj), alpha2) : 0.0);
        }
    }
    return field;
}

}  // namespace

FieldSample simulate_w_field(double alpha1, double alpha2, const GridSpec& s_grid,
                             const GridSpec& t_grid, std::uint64_t seed) {
    return simulate_separable(alpha1, alpha2, s_grid, t_grid, seed, true);
}

FieldSample simulate_fbm_sum_field(double alpha1, double alpha2, const GridSpec& s_grid,
                                   const GridSpec& t_grid, std::uint64_t seed) {
    return simulate_separable(alpha1, alpha2, s_grid, t_grid, seed, false);
}

}  // namespace ridgetail
