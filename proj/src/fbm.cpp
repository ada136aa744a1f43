#include "ridgetail/fbm.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace ridgetail {

namespace {

constexpr int kDenseCapacity = 1 << 14;
constexpr double kEigClampTol = 1e-10;

std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

double fbm_cov(double s, double t, double alpha) {
    if (!(alpha > 0.0) || alpha > 2.0)
        throw std::domain_error("fbm_cov: alpha must lie in (0, 2]");
    const double as = std::abs(s);
    const double at = std::abs(t);
    const double ad = std::abs(t - s);
    return 0.5 * (std::pow(as, alpha) + std::pow(at, alpha) - std::pow(ad, alpha));
}

PathSampler::PathSampler(GridSpec grid, double alpha) : grid_(grid), alpha_(alpha) {
    grid_.validate();
    if (!(alpha > 0.0) || alpha > 2.0)
        throw std::domain_error("PathSampler: alpha must lie in (0, 2]");
    if (grid_.start == 0.0) {
        method_ = Method::circulant;
        build_circulant();
    } else {
        method_ = Method::dense;
        build_dense();
    }
}

PathSampler::~PathSampler() {
    if (plan_) {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    }
}

PathSampler::PathSampler(PathSampler&& other) noexcept { *this = std::move(other); }

PathSampler& PathSampler::operator=(PathSampler&& other) noexcept {
    if (this != &other) {
        if (plan_) {
            std::lock_guard<std::mutex> lock(fftw_mutex());
            fftw_destroy_plan(static_cast<fftw_plan>(plan_));
        }
        grid_ = other.grid_;
        alpha_ = other.alpha_;
        method_ = other.method_;
        normals_needed_ = other.normals_needed_;
        embed_size_ = other.embed_size_;
        sqrt_eig_ = std::move(other.sqrt_eig_);
        plan_ = other.plan_;
        other.plan_ = nullptr;
        factor_ = std::move(other.factor_);
        active_ = std::move(other.active_);
    }
    return *this;
}

void PathSampler::build_circulant() {
    const int m = grid_.n_points - 1;  // number of increments
    const double h = grid_.spacing();
    const double ha = std::pow(h, alpha_);

    // fractional Gaussian noise autocovariance at lag k
    auto fgn = [&](int k) {
        const double kk = static_cast<double>(k);
        return 0.5 * ha *
               (std::pow(std::abs(kk + 1.0), alpha_) - 2.0 * std::pow(std::abs(kk), alpha_) +
                std::pow(std::abs(kk - 1.0), alpha_));
    };

    const int n_embed = 2 * m;
    std::vector<std::complex<double>> c(n_embed);
    for (int k = 0; k <= m; ++k) c[k] = fgn(k);
    for (int k = m + 1; k < n_embed; ++k) c[k] = fgn(n_embed - k);

    // eigenvalues of the circulant = DFT of its first row
    std::vector<std::complex<double>> lambda(n_embed);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_plan p = fftw_plan_dft_1d(n_embed, reinterpret_cast<fftw_complex*>(c.data()),
                                       reinterpret_cast<fftw_complex*>(lambda.data()),
                                       FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_execute(p);
        fftw_destroy_plan(p);
    }

    double max_eig = 0.0;
    for (const auto& l : lambda) max_eig = std::max(max_eig, l.real());
    double min_eig = 0.0;
    for (const auto& l : lambda) min_eig = std::min(min_eig, l.real());

    if (min_eig < -kEigClampTol * max_eig) {
        // embedding not nonnegative definite: exact dense fallback
        method_ = Method::dense;
        build_dense();
        return;
    }

    embed_size_ = n_embed;
    sqrt_eig_.resize(n_embed);
    for (int k = 0; k < n_embed; ++k)
        sqrt_eig_[k] = std::sqrt(std::max(lambda[k].real(), 0.0) / n_embed);
    normals_needed_ = n_embed;

    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        std::vector<std::complex<double>> a(n_embed), b(n_embed);
        plan_ = fftw_plan_dft_1d(n_embed, reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
}

void PathSampler::build_dense() {
    const int n = grid_.n_points;
    active_.clear();
    for (int i = 0; i < n; ++i)
        if (grid_.point(i) != 0.0) active_.push_back(i);
    const int na = static_cast<int>(active_.size());
    if (na > kDenseCapacity)
        throw std::length_error("PathSampler: grid too large for dense factorization (> 2^14 points)");

    Eigen::MatrixXd cov(na, na);
    for (int i = 0; i < na; ++i) {
        const double ti = grid_.point(active_[i]);
        for (int j = 0; j <= i; ++j) {
            const double c = fbm_cov(ti, grid_.point(active_[j]), alpha_);
            cov(i, j) = c;
            cov(j, i) = c;
        }
    }

    // plain Cholesky for the strictly positive definite case; positive
    // semidefinite covariances (e.g. alpha = 2, rank one) fall back to a
    // spectral factorization with tiny negative eigenvalues clamped to zero
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() == Eigen::Success) {
        factor_ = llt.matrixL();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
        if (eig.info() != Eigen::Success)
            throw std::runtime_error("PathSampler: eigendecomposition failed");
        Eigen::VectorXd d = eig.eigenvalues();
        const double max_eig = d.maxCoeff();
        for (int i = 0; i < d.size(); ++i) {
            if (d(i) < -kEigClampTol * max_eig)
                throw std::runtime_error("PathSampler: covariance not positive semidefinite");
            d(i) = std::sqrt(std::max(d(i), 0.0));
        }
        factor_ = eig.eigenvectors() * d.asDiagonal();
    }
    normals_needed_ = na;
}

void PathSampler::sample(SubstreamRng& rng, std::span<double> out, PathWorkspace& ws) const {
    ws.normals.resize(normals_needed_);
    rng.normals(ws.normals);
    sample_from(ws.normals, out, ws);
}

void PathSampler::sample_from(std::span<const double> normals, std::span<double> out,
                              PathWorkspace& ws) const {
    const int n = grid_.n_points;
    if (static_cast<int>(out.size()) != n)
        throw std::invalid_argument("PathSampler: output size mismatch");
    if (static_cast<int>(normals.size()) != normals_needed_)
        throw std::invalid_argument("PathSampler: normal vector size mismatch");

    if (method_ == Method::circulant) {
        const int ne = embed_size_;
        const int m = ne / 2;
        ws.freq.resize(ne);
        ws.time.resize(ne);
        // Hermitian-symmetric complex normal spectrum
        const double inv_sqrt2 = 0.70710678118654752440;
        ws.freq[0] = sqrt_eig_[0] * normals[0];
        ws.freq[m] = sqrt_eig_[m] * normals[1];
        for (int k = 1; k < m; ++k) {
            const double re = normals[2 * k] * inv_sqrt2;
            const double im = normals[2 * k + 1] * inv_sqrt2;
            ws.freq[k] = sqrt_eig_[k] * std::complex<double>(re, im);
            ws.freq[ne - k] = sqrt_eig_[ne - k] * std::complex<double>(re, -im);
        }
        fftw_execute_dft(static_cast<fftw_plan>(plan_),
                         reinterpret_cast<fftw_complex*>(ws.freq.data()),
                         reinterpret_cast<fftw_complex*>(ws.time.data()));
        // cumulative sum of the fGn increments, pinned at B(0) = 0
        out[0] = 0.0;
        double acc = 0.0;
        for (int i = 0; i < n - 1; ++i) {
            acc += ws.time[i].real();
            out[i + 1] = acc;
        }
    } else {
        const int na = static_cast<int>(active_.size());
        Eigen::Map<const Eigen::VectorXd> z(normals.data(), na);
        ws.tmp.noalias() = factor_ * z;
        std::fill(out.begin(), out.end(), 0.0);
        for (int i = 0; i < na; ++i) out[active_[i]] = ws.tmp(i);
    }
}

FbmPath simulate_fbm(const GridSpec& grid, double alpha, std::uint64_t seed) {
    grid.validate();
    if (grid.start != 0.0)
        throw std::domain_error("simulate_fbm: grid must start at 0");
    PathSampler sampler(grid, alpha);
    PathWorkspace ws;
    SubstreamRng rng(seed, 0);
    FbmPath path;
    path.grid = grid;
    path.alpha = alpha;
    path.values.resize(grid.n_points);
    sampler.sample(rng, path.values, ws);
    return path;
}

}  // namespace ridgetail
