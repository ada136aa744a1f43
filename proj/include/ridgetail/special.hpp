#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace ridgetail {

// Standard normal tail Psi(u) = 1 - Phi(u), via the complementary error
// function; relative error below 1e-12 on [-8, 8].
double gaussian_tail(double u);

// Gauss-Legendre nodes and weights on [-1, 1]; cached per n.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

struct QuadResult {
    double value = 0.0;
    bool converged = false;
    int nodes = 0;
};

// Gauss-Legendre quadrature starting at n0 nodes, doubling until the
// relative change drops below tol or max_nodes is exceeded.
QuadResult integrate_doubling(const std::function<double(double)>& f, double a, double b,
                              double tol = 1e-8, int n0 = 64, int max_nodes = 16384);

// int_0^1 (1 - t^a)^(b-1) dt = B(1/a, b) / a, exact Beta reduction.
double beta_reduced_integral(double a, double b);

// log Gamma wrapper kept thread-safe (std::lgamma may touch signgam)
double log_gamma(double x);

}  // namespace ridgetail
