#pragma once

#include <cmath>
#include <stdexcept>

namespace ridgetail {

// Uniform grid on [start, end] with n_points points.
struct GridSpec {
    double start = 0.0;
    double end = 1.0;
    int n_points = 2;

    double spacing() const { return (end - start) / (n_points - 1); }
    double point(int i) const { return start + i * spacing(); }

    void validate() const {
        if (!(end > start)) throw std::domain_error("GridSpec: end must exceed start");
        if (n_points < 2) throw std::domain_error("GridSpec: need at least 2 points");
        if (!std::isfinite(start) || !std::isfinite(end))
            throw std::domain_error("GridSpec: bounds must be finite");
    }

    // index of the grid point equal to x, or -1 if x is not on the grid
    int index_of(double x) const {
        const double h = spacing();
        const double k = (x - start) / h;
        const double r = std::round(k);
        if (std::abs(k - r) > 1e-9 || r < 0 || r >= n_points) return -1;
        return static_cast<int>(r);
    }
};

}  // namespace ridgetail
