#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ridgetail/grid.hpp"
#include "ridgetail/rng.hpp"

namespace ridgetail {

// Covariance of standard fractional Brownian motion with index alpha in (0,2]
// (alpha is twice the Hurst parameter): (|s|^a + |t|^a - |t-s|^a) / 2.
double fbm_cov(double s, double t, double alpha);

struct FbmPath {
    GridSpec grid;
    std::vector<double> values;
    double alpha = 1.0;
};

// Scratch buffers for path generation; one per worker thread.
struct PathWorkspace {
    std::vector<std::complex<double>> freq;
    std::vector<std::complex<double>> time;
    std::vector<double> normals;
    Eigen::VectorXd tmp;
};

// Exact sampler of fBm on a uniform grid.
//
// Grids starting at 0 use circulant embedding of the fractional Gaussian
// noise covariance (Davies-Harte): O(n log n) per path and exact whenever the
// embedding is nonnegative definite. Negative embedding eigenvalues below
// -1e-10 times the largest trigger a fallback to a dense factorization of the
// exact path covariance; tinier negatives are clamped to zero as rounding
// noise. Grids that do not start at 0 (in particular two-sided grids spanning
// the origin) always use the dense route, which reproduces the exact joint
// law including the correlation between the two half-axes. Dense
// factorizations are capped at 2^14 points.
class PathSampler {
  public:
    enum class Method { circulant, dense };

    PathSampler(GridSpec grid, double alpha);
    ~PathSampler();
    PathSampler(PathSampler&&) noexcept;
    PathSampler& operator=(PathSampler&&) noexcept;
    PathSampler(const PathSampler&) = delete;
    PathSampler& operator=(const PathSampler&) = delete;

    const GridSpec& grid() const { return grid_; }
    double alpha() const { return alpha_; }
    Method method() const { return method_; }
    int normals_needed() const { return normals_needed_; }

    // out.size() == grid.n_points
    void sample(SubstreamRng& rng, std::span<double> out, PathWorkspace& ws) const;
    // deterministic linear map from a fixed normal vector; sample() == this
    // applied to freshly drawn normals
    void sample_from(std::span<const double> normals, std::span<double> out,
                     PathWorkspace& ws) const;

  private:
    void build_circulant();
    void build_dense();

    GridSpec grid_;
    double alpha_ = 1.0;
    Method method_ = Method::circulant;
    int normals_needed_ = 0;

    // circulant state
    int embed_size_ = 0;
    std::vector<double> sqrt_eig_;  // sqrt(lambda_k / N)
    void* plan_ = nullptr;          // fftw_plan

    // dense state: factor F with F F^T = covariance of the non-pinned points
    Eigen::MatrixXd factor_;
    std::vector<int> active_;  // grid indices with nonzero variance
};

// One exact fBm path on a uniform grid starting at 0; deterministic in
// (grid, alpha, seed).
FbmPath simulate_fbm(const GridSpec& grid, double alpha, std::uint64_t seed);

}  // namespace ridgetail
