#include "ridgetail/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ridgetail/fbm.hpp"
#include "ridgetail/mc.hpp"

namespace ridgetail {

namespace {

constexpr double kGolden = 0.6180339887498948482;

double frac(double x) { return x - std::floor(x); }

double sigma2(double s, double t, double a1, double a2) {
    return std::pow(std::abs(s), a1) + std::pow(std::abs(t), a2);
}

// per-row column ranges of { |s|^a1 + |t|^a2 <= 1 } over the given axis
// points (direct comparison, no boundary snapping)
struct DomainMask {
    std::vector<int> lo, hi;  // inclusive; lo > hi means empty row
};

DomainMask build_mask(const std::vector<double>& pts, double a1, double a2) {
    DomainMask m;
    const int n = static_cast<int>(pts.size());
    m.lo.assign(n, 1);
    m.hi.assign(n, 0);
    for (int j = 0; j < n; ++j) {
        const double tj = std::pow(std::abs(pts[j]), a2);
        int lo = n, hi = -1;
        for (int i = 0; i < n; ++i) {
            if (std::pow(std::abs(pts[i]), a1) + tj <= 1.0) {
                lo = std::min(lo, i);
                hi = std::max(hi, i);
            }
        }
        m.lo[j] = lo;
        m.hi[j] = hi;
    }
    return m;
}

std::vector<double> axis_points(const GridSpec& axis, int stride) {
    std::vector<double> pts;
    for (int i = 0; i * stride < axis.n_points; ++i) pts.push_back(axis.point(i * stride));
    return pts;
}

struct FieldWs {
    PathWorkspace pw;
    std::vector<double> b1, b2;
};

}  // namespace

SupTailEstimate mc_sup_tail(double alpha1, double alpha2, double u, int grid_n, long reps,
                            std::uint64_t seed, int threads) {
    if (grid_n < 16) throw std::domain_error("mc_sup_tail: grid_n must be at least 16");
    if (!(u >= 0.0)) throw std::domain_error("mc_sup_tail: u must be nonnegative");

    const GridSpec axis{-1.0, 1.0, grid_n + 1};
    PathSampler s_sampler(axis, alpha1);
    PathSampler t_sampler(axis, alpha2);
    const DomainMask mask = build_mask(axis_points(axis, 1), alpha1, alpha2);

    McOptions opt;
    opt.reps = reps;
    opt.threads = threads;
    auto make_ws = [&]() {
        FieldWs ws;
        ws.b1.resize(axis.n_points);
        ws.b2.resize(axis.n_points);
        return ws;
    };
    auto fn = [&](long rep, FieldWs& ws, std::span<double> out) {
        SubstreamRng rng(seed, static_cast<std::uint64_t>(rep));
        s_sampler.sample(rng, ws.b1, ws.pw);
        t_sampler.sample(rng, ws.b2, ws.pw);
        double sup = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < axis.n_points; ++j) {
            if (mask.lo[j] > mask.hi[j]) continue;
            double m = -std::numeric_limits<double>::infinity();
            for (int i = mask.lo[j]; i <= mask.hi[j]; ++i)
                m = std::max(m, ws.b1[i]);
            sup = std::max(sup, m + ws.b2[j]);
        }
        out[0] = sup > u ? 1.0 : 0.0;
    };
    const McMoments m = run_mc(opt, 1, make_ws, fn);

    SupTailEstimate est;
    est.u = u;
    est.grid_n = grid_n;
    est.reps = reps;
    est.p_hat = m.mean[0];
    est.se = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(reps));
    est.weak = est.p_hat * static_cast<double>(reps) < 10.0;
    return est;
}

ExpansionReport check_variance_expansion(double alpha1, double alpha2,
                                         std::span<const double> deltas, int n_points,
                                         bool approach_in_t) {
    if (n_points < 1) throw std::domain_error("check_variance_expansion: need sample points");
    ExpansionReport rep;
    for (double delta : deltas) {
        if (!(delta > 0.0))
            throw std::domain_error("check_variance_expansion: delta must be positive");
        double worst = 0.0;
        for (int k = 0; k < n_points; ++k) {
            const double fixed = -0.9 + 1.8 * frac((k + 1) * kGolden);
            double s, t, expansion;
            if (approach_in_t) {
                const double rem = 1.0 - std::pow(std::abs(fixed), alpha1);
                const double t_curve = std::pow(rem, 1.0 / alpha2);
                if (t_curve <= 2.0 * delta) continue;  // would cross the axis
                s = fixed;
                t = t_curve - delta;
                expansion = 0.5 * alpha2 * std::pow(rem, 1.0 - 1.0 / alpha2) * delta;
            } else {
                const double rem = 1.0 - std::pow(std::abs(fixed), alpha2);
                const double s_curve = std::pow(rem, 1.0 / alpha1);
                if (s_curve <= 2.0 * delta) continue;
                s = s_curve - delta;
                t = fixed;
                expansion = 0.5 * alpha1 * std::pow(rem, 1.0 - 1.0 / alpha1) * delta;
            }
            const double lhs = 1.0 - std::sqrt(sigma2(s, t, alpha1, alpha2));
            worst = std::max(worst, std::abs(lhs / expansion - 1.0));
        }
        rep.deltas.push_back(delta);
        rep.max_rel_err.push_back(worst);
    }
    return rep;
}

ExpansionReport check_correlation_expansion(double alpha1, double alpha2,
                                            std::span<const double> deltas, int n_pairs) {
    if (n_pairs < 1) throw std::domain_error("check_correlation_expansion: need sample pairs");
    auto curve_t = [&](double s) {
        return std::pow(1.0 - std::pow(std::abs(s), alpha1), 1.0 / alpha2);
    };
    // exact correlation of the normalized separable field, in the stable
    // variance-difference form
    auto deviation = [&](double s, double t, double s1, double t1) {
        const double D =
            std::pow(std::abs(s - s1), alpha1) + std::pow(std::abs(t - t1), alpha2);
        const double v = sigma2(s, t, alpha1, alpha2);
        const double v1 = sigma2(s1, t1, alpha1, alpha2);
        const double sd = std::sqrt(v), sd1 = std::sqrt(v1);
        const double dsig = (v - v1) / (sd + sd1);
        const double one_minus_r = (D - dsig * dsig) / (2.0 * sd * sd1);
        return std::abs(2.0 * one_minus_r / D - 1.0);
    };

    ExpansionReport rep;
    for (double delta : deltas) {
        if (!(delta > 0.0))
            throw std::domain_error("check_correlation_expansion: delta must be positive");
        double worst = 0.0;
        for (int k = 0; k < n_pairs; ++k) {
            const double s = -0.9 + 1.8 * frac((k + 1) * kGolden);
            const double t_on = curve_t(s);
            if (t_on <= 4.0 * delta || std::abs(s) <= 4.0 * delta) continue;
            switch (k % 3) {
                case 0:  // pure t separation from a curve point
                    worst = std::max(worst, deviation(s, t_on, s, t_on - delta));
                    break;
                case 1: {  // pure s separation just inside the domain
                    const double t = t_on - 0.5 * delta;
                    const double s1 = s - std::copysign(delta, s);
                    worst = std::max(worst, deviation(s, t, s1, t));
                    break;
                }
                case 2: {  // both points on the curve
                    const double s1 = s + 0.6 * delta * (s > 0 ? -1.0 : 1.0);
                    worst = std::max(worst, deviation(s, t_on, s1, curve_t(s1)));
                    break;
                }
            }
        }
        rep.deltas.push_back(delta);
        rep.max_rel_err.push_back(worst);
    }
    return rep;
}

CompareTable compare_run(double alpha1, double alpha2, std::span<const double> u_list,
                         std::span<const int> grid_ladder, long reps, std::uint64_t seed,
                         ConstantsProvider& constants, int threads) {
    if (u_list.empty() || grid_ladder.empty())
        throw std::domain_error("compare_run: need u values and grids");
    const int fine = *std::max_element(grid_ladder.begin(), grid_ladder.end());
    for (int g : grid_ladder) {
        if (g < 16) throw std::domain_error("compare_run: grid_n must be at least 16");
        if (fine % g != 0)
            throw std::domain_error("compare_run: grid ladder must be nested (divide the largest)");
    }

    const GridSpec axis{-1.0, 1.0, fine + 1};
    PathSampler s_sampler(axis, alpha1);
    PathSampler t_sampler(axis, alpha2);

    const int n_grids = static_cast<int>(grid_ladder.size());
    const int n_u = static_cast<int>(u_list.size());

    // per-grid masks on the strided index sets of the fine grid; computing
    // them from the fine grid's own point values keeps coarse point sets
    // exact subsets, so nested-grid sup monotonicity holds per path
    std::vector<DomainMask> masks(n_grids);
    std::vector<int> strides(n_grids);
    for (int g = 0; g < n_grids; ++g) {
        const int stride = fine / grid_ladder[g];
        strides[g] = stride;
        masks[g] = build_mask(axis_points(axis, stride), alpha1, alpha2);
    }

    McOptions opt;
    opt.reps = reps;
    opt.threads = threads;
    auto make_ws = [&]() {
        FieldWs ws;
        ws.b1.resize(axis.n_points);
        ws.b2.resize(axis.n_points);
        return ws;
    };
    auto fn = [&](long rep, FieldWs& ws, std::span<double> out) {
        SubstreamRng rng(seed, static_cast<std::uint64_t>(rep));
        s_sampler.sample(rng, ws.b1, ws.pw);
        t_sampler.sample(rng, ws.b2, ws.pw);
        for (int g = 0; g < n_grids; ++g) {
            const int stride = strides[g];
            const DomainMask& mask = masks[g];
            const int rows = grid_ladder[g] + 1;
            double sup = -std::numeric_limits<double>::infinity();
            for (int j = 0; j < rows; ++j) {
                if (mask.lo[j] > mask.hi[j]) continue;
                double m = -std::numeric_limits<double>::infinity();
                for (int i = mask.lo[j]; i <= mask.hi[j]; ++i)
                    m = std::max(m, ws.b1[i * stride]);
                sup = std::max(sup, m + ws.b2[j * stride]);
            }
            for (int q = 0; q < n_u; ++q)
                out[g * n_u + q] = sup > u_list[q] ? 1.0 : 0.0;
        }
    };
    const McMoments m = run_mc(opt, n_grids * n_u, make_ws, fn);

    CompareTable table;
    table.asymptote = fbm_sum_asymptote(alpha1, alpha2, constants);
    for (int g = 0; g < n_grids; ++g) {
        for (int q = 0; q < n_u; ++q) {
            CompareRow row;
            row.u = u_list[q];
            row.grid_n = grid_ladder[g];
            row.p_hat = m.mean[g * n_u + q];
            row.se = std::sqrt(row.p_hat * (1.0 - row.p_hat) / static_cast<double>(reps));
            row.asym = table.asymptote.evaluate(row.u);
            row.asym_se = row.asym == 0.0
                              ? 0.0
                              : row.asym * table.asymptote.K_se / table.asymptote.K;
            row.ratio = row.asym > 0.0 ? row.p_hat / row.asym : 0.0;
            row.weak = row.p_hat * static_cast<double>(reps) < 10.0;
            table.rows.push_back(row);
        }
    }

    // flag |ratio - 1| growing with u (finest grid) beyond the combined CI
    auto ratio_se = [](const CompareRow& r) {
        if (r.p_hat <= 0.0 || r.asym <= 0.0) return 0.0;
        return r.ratio * std::hypot(r.se / r.p_hat, r.asym_se / r.asym);
    };
    const int g_fine = static_cast<int>(
        std::max_element(grid_ladder.begin(), grid_ladder.end()) - grid_ladder.begin());
    for (int q = 1; q < n_u; ++q) {
        CompareRow& cur = table.rows[g_fine * n_u + q];
        const CompareRow& prev = table.rows[g_fine * n_u + q - 1];
        const double d_cur = std::abs(cur.ratio - 1.0);
        const double d_prev = std::abs(prev.ratio - 1.0);
        const double slack = 2.0 * std::hypot(ratio_se(cur), ratio_se(prev));
        if (d_cur > d_prev + slack) cur.trend_break = true;
    }
    return table;
}

}  // namespace ridgetail
