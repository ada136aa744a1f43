#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "ridgetail/fbm.hpp"
#include "ridgetail/grid.hpp"

namespace ridgetail {

struct FieldSample {
    GridSpec s_grid;
    GridSpec t_grid;
    Eigen::MatrixXd values;  // n_s x n_t
};

// W(s,t) = sqrt(2) B1(s) + sqrt(2) B2(t) - |s|^a1 - |t|^a2, B1 independent of B2.
FieldSample simulate_w_field(double alpha1, double alpha2, const GridSpec& s_grid,
                             const GridSpec& t_grid, std::uint64_t seed);

// Drift-free separable sum B1(s) + B2(t).
FieldSample simulate_fbm_sum_field(double alpha1, double alpha2, const GridSpec& s_grid,
                                   const GridSpec& t_grid, std::uint64_t seed);

}  // namespace ridgetail
