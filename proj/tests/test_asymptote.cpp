#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "ridgetail/asymptote.hpp"

using namespace ridgetail;

namespace {

PinnedConstantsProvider rich_table() {
    PinnedConstantsProvider p;
    p.set_pickands(0.5, 1.3);
    p.set_pickands(0.8, 1.2);
    p.set_pickands(1.0, 1.0);
    p.set_pickands(1.5, 0.8);
    p.set_pickands(1.6, 0.78);
    p.set_pickands(2.0, 1.0 / std::sqrt(M_PI));
    p.set_piterbarg(1.0, 1.0, true, 2.0);
    p.set_piterbarg(1.0, 1.0, false, 8.0 / 3.0);
    p.set_piterbarg(1.5, 1.0, false, 2.5);
    p.set_piterbarg(1.6, 1.0, false, 2.4);
    p.set_gen_rate(1.0, 1.0, -1.0, true, 2.2);
    p.set_gen_rate(1.0, 1.0, 1.0, false, 2.7);
    p.set_gen_rate(1.0, 1.0, -2.0, false, 3.1);
    return p;
}

LineScenario line(double b, double i1, double i2, double iv) {
    LineScenario scn;
    scn.T1 = 1.0;
    scn.T2 = 1.0;
    scn.b = b;
    scn.rho1 = {1.0, i1};
    scn.rho2 = {1.0, i2};
    scn.v = {1.0, iv};
    return scn;
}

}  // namespace

TEST_CASE("line asymptote: gamma-zero branch assembles gamma function and both Pickands") {
    auto prov = rich_table();
    // alpha1 = alpha2 = 1, beta = 1.6: gamma_1 = 0
    auto scn = line(0.0, 0.5, 0.5, 0.8);
    const auto asym = line_asymptote(scn, prov);
    CHECK(asym.case_tag == "th2.1-gamma0");
    CHECK(asym.p == doctest::Approx(2.0 + 2.0 - 2.0 / 1.6).epsilon(1e-14));
    // K = 2 * length * Gamma(1/beta+1) * H_1^2, unit coefficient corrections
    const double want = 2.0 * 2.0 * std::tgamma(1.0 / 1.6 + 1.0) * 1.0 * 1.0;
    CHECK(asym.K == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("line asymptote: finite-gamma branch uses the Piterbarg constant") {
    auto prov = rich_table();
    auto scn = line(0.0, 0.5, 0.5, 0.5);  // gamma_1 = 1
    const auto asym = line_asymptote(scn, prov);
    CHECK(asym.case_tag == "th2.1-gamma-finite");
    CHECK(asym.p == doctest::Approx(2.0));
    CHECK(asym.K == doctest::Approx(2.0 * 1.0 * (8.0 / 3.0)).epsilon(1e-12));  // 2T2 H_1 P_1^1
}

TEST_CASE("line asymptote: gamma-inf branch drops the Piterbarg factor") {
    auto prov = rich_table();
    auto scn = line(0.0, 0.5, 0.5, 0.25);  // beta = 0.5 < alpha1: gamma_1 = inf
    scn.rho2 = {2.0, 0.5};                 // exercise the coefficient correction
    const auto asym = line_asymptote(scn, prov);
    CHECK(asym.case_tag == "th2.1-gamma-inf");
    CHECK(asym.p == doctest::Approx(2.0));
    // K = 2T2 * H_{alpha2} * c2^{2/alpha2}
    CHECK(asym.K == doctest::Approx(2.0 * 1.0 * 4.0).epsilon(1e-12));
}

TEST_CASE("line asymptote: tilted cases") {
    auto prov = rich_table();
    // th2.2 finite gamma: needs the strip-rate constant H_1^{1,-1} hat=false
    auto scn = line(-1.0, 0.5, 0.5, 0.5);
    scn.boundary = true;
    scn.T1 = 0.0;
    scn.T2 = 1.0;
    const auto asym = line_asymptote(scn, prov);
    CHECK(asym.case_tag == "th2.2-gamma-finite-boundary");
    CHECK(asym.K == doctest::Approx(1.0 * 2.2).epsilon(1e-12));  // (t2-t1) * hat rate

    // th2.2 gamma-inf: K = length * (|b|^a1/eta + 1)^{1/a1} * H_{a1}
    auto scn2 = line(1.0, 0.5, 0.5, 0.25);
    const auto asym2 = line_asymptote(scn2, prov);
    CHECK(asym2.case_tag == "th2.2-gamma-inf");
    CHECK(asym2.K == doctest::Approx(2.0 * 2.0 * 1.0).epsilon(1e-12));
    CHECK(asym2.p == doctest::Approx(2.0));
}

TEST_CASE("line asymptote: boundary variant swaps in the one-sided constant") {
    auto prov = rich_table();
    auto scn = line(0.0, 0.5, 0.5, 0.5);  // gamma_1 = 1
    scn.boundary = true;
    scn.T1 = 0.0;
    scn.T2 = 1.0;
    const auto asym = line_asymptote(scn, prov);
    CHECK(asym.case_tag == "th2.1-gamma-finite-boundary");
    // (t2 - t1) * H_1 * hat-P_1^1 = 1 * 1 * 2, not the two-sided 8/3
    CHECK(asym.K == doctest::Approx(2.0).epsilon(1e-12));

    // gamma-zero boundary halves the Gamma factor
    auto scn0 = line(0.0, 0.5, 0.5, 0.8);
    const auto full = line_asymptote(scn0, prov);
    scn0.boundary = true;
    scn0.T1 = -1.0;
    scn0.T2 = 1.0;  // same segment length as 2 T2
    const auto halved = line_asymptote(scn0, prov);
    CHECK(halved.K == doctest::Approx(0.5 * full.K).epsilon(1e-12));
}

TEST_CASE("line asymptote: degenerate segment gives K = 0 with the flag") {
    auto prov = rich_table();
    auto scn = line(1.0, 0.5, 0.5, 0.5);
    scn.T1 = 0.0;  // min(T2, T1/|b|) = 0
    const auto asym = line_asymptote(scn, prov);
    CHECK(asym.degenerate);
    CHECK(asym.K == 0.0);
}

TEST_CASE("exponent table matches hand-derived values exactly (12 cases)") {
    auto prov = rich_table();
    struct Case {
        double b, i1, i2, iv;
        const char* tag;
        double p;
    };
    // p formed as 2/a1 + 2/a2 - 2/beta on gamma-zero branches, else 2/a2 of
    // the canonical scenario; identical closed-form expressions below
    const Case cases[] = {
        {0.0, 0.5, 0.5, 0.5, "th2.1-gamma-finite", 2.0 / 1.0},
        {0.0, 0.5, 0.5, 0.75, "th2.1-gamma0", 2.0 / 1.0 + 2.0 / 1.0 - 2.0 / 1.5},
        {0.0, 0.5, 0.5, 0.25, "th2.1-gamma-inf", 2.0 / 1.0},
        {0.0, 0.25, 0.5, 0.625, "th2.1-gamma0", 2.0 / 0.5 + 2.0 / 1.0 - 2.0 / 1.25},
        {0.0, 0.8, 0.4, 0.8, "th2.1-gamma-finite", 2.0 / 0.8},
        {1.0, 0.5, 0.5, 0.5, "th2.2-gamma-finite", 2.0 / 1.0},
        {1.0, 0.5, 0.5, 0.75, "th2.2-gamma0", 2.0 / 1.0 + 2.0 / 1.0 - 2.0 / 1.5},
        {1.0, 0.5, 0.5, 0.25, "th2.2-gamma-inf", 2.0 / 1.0},
        {-2.0, 0.5, 0.5, 0.5, "th2.2-gamma-finite", 2.0 / 1.0},
        {2.0, 0.5, 0.75, 0.5, "th2.1-gamma-inf", 2.0 / 1.0},     // eta=0 reduction
        {1.0, 0.75, 0.5, 0.75, "th2.1-gamma-finite", 2.0 / 1.0},  // eta=inf reduction
        {1.0, 0.75, 0.5, 0.9, "th2.1-gamma0", 2.0 / 1.5 + 2.0 / 1.0 - 2.0 / 1.8},
    };
    int n = 0;
    for (const Case& c : cases) {
        auto scn = line(c.b, c.i1, c.i2, c.iv);
        const auto cls = classify_line(scn);
        CHECK(to_string(cls.tag) == c.tag);
        const auto asym = line_asymptote(scn, prov);
        CHECK(asym.p == c.p);  // exact: same closed-form expression
        ++n;
    }
    CHECK(n == 12);
}

namespace {

CurveScenario curve_gamma_zero(std::function<double(double)> f,
                               std::function<double(double)> fp) {
    CurveScenario scn;
    scn.T1 = 1.0;
    scn.T2 = 2.0;
    scn.f = std::move(f);
    scn.f_prime = std::move(fp);
    scn.g = [](double) { return 2.0; };
    scn.rho1 = {1.0, 0.4};  // alpha1 = 0.8
    scn.rho2 = {1.0, 0.5};  // alpha2 = 1.0, eta = 0
    scn.v = {1.0, 0.6};     // beta = 1.2 > alpha2: gamma_2 = 0
    return scn;
}

}  // namespace

TEST_CASE("curve asymptote: gamma-zero branch is independent of f") {
    auto prov = rich_table();
    const auto a1 = curve_asymptote(
        curve_gamma_zero([](double t) { return 3.0 * t; }, [](double) { return 3.0; }), prov);
    const auto a2 = curve_asymptote(
        curve_gamma_zero([](double t) { return t * t; }, [](double t) { return 2.0 * t; }),
        prov);
    CHECK(a1.case_tag == "th3.1-gamma0");
    CHECK(a1.K == doctest::Approx(a2.K).epsilon(1e-9));
    // K = 2 Gamma(1/beta+1) H(0.8) H(1.0) * int 1/g = 2 Gamma(1/1.2+1) * 1.2 * 0.5
    const double want = 2.0 * std::tgamma(1.0 / 1.2 + 1.0) * 1.2 * 1.0 * 0.5;
    CHECK(a1.K == doctest::Approx(want).epsilon(1e-9));
    CHECK(a1.p == doctest::Approx(2.0 / 0.8 + 2.0 - 2.0 / 1.2).epsilon(1e-14));
}

TEST_CASE("curve asymptote: eta=inf with gamma-inf collapses to length times Pickands") {
    auto prov = rich_table();
    CurveScenario scn;
    scn.T1 = 0.5;
    scn.T2 = 1.75;
    scn.f = [](double t) { return t; };
    scn.f_prime = [](double) { return 1.0; };
    scn.g = [](double) { return 1.0; };
    scn.rho1 = {1.0, 0.75};  // alpha1 = 1.5
    scn.rho2 = {1.0, 0.5};   // alpha2 = 1: eta = inf
    scn.v = {1.0, 0.5};      // beta = 1 < alpha1: gamma_1 = inf
    const auto asym = curve_asymptote(scn, prov);
    CHECK(asym.case_tag == "th3.3-gamma-inf");
    CHECK(asym.K == doctest::Approx(1.25 * 1.0).epsilon(1e-9));  // (T2-T1) H_{alpha2} = 1.25
    CHECK(asym.p == doctest::Approx(2.0));
}

TEST_CASE("curve asymptote: remaining branch structure") {
    auto prov = rich_table();

    // eta = 0 with gamma_2 = inf: Piterbarg factors collapse to 1 and only
    // int |f'| remains
    CurveScenario scn;
    scn.T1 = 0.0;
    scn.T2 = 2.0;
    scn.f = [](double t) { return 3.0 * t; };
    scn.f_prime = [](double) { return 3.0; };
    scn.g = [](double) { return 1.0; };
    scn.rho1 = {1.0, 0.4};  // alpha1 = 0.8
    scn.rho2 = {1.0, 0.5};  // alpha2 = 1: eta = 0
    scn.v = {1.0, 0.2};     // beta = 0.4 < alpha2: gamma_2 = inf
    const auto a = curve_asymptote(scn, prov);
    CHECK(a.case_tag == "th3.1-gamma-inf");
    CHECK(a.K == doctest::Approx(1.2 * 6.0).epsilon(1e-9));  // H(0.8) int |f'| = 1.2 * 6
    CHECK(a.p == doctest::Approx(2.0 / 0.8));

    // eta finite with finite gamma_1: the tilted-strip rate under the
    // integral; with constant g and f' the integrand is one cached constant
    CurveScenario scn2;
    scn2.T1 = 0.0;
    scn2.T2 = 1.5;
    scn2.f = [](double t) { return 2.0 - t; };
    scn2.f_prime = [](double) { return -1.0; };
    scn2.g = [](double) { return 0.5; };
    scn2.rho1 = {std::sqrt(0.5), 0.5};
    scn2.rho2 = {std::sqrt(0.5), 0.5};  // eta = 1
    scn2.v = {1.0, 0.5};                // gamma_1 = 2; gamma_1 g^a1 = 1
    scn2.boundary = true;               // hat variant: pinned entry (1,1,-1,true)
    const auto b = curve_asymptote(scn2, prov);
    CHECK(b.case_tag == "th3.2-gamma-finite-boundary");
    CHECK(b.K == doctest::Approx(0.5 * 2.2 * 1.5).epsilon(1e-9));  // c2^2 * rate * length
    CHECK(b.p == doctest::Approx(2.0));

    // eta finite with gamma_1 = inf: closed-form tilt integrand
    CurveScenario scn3 = scn2;
    scn3.boundary = false;
    scn3.v = {1.0, 0.25};  // beta = 0.5 < alpha1: gamma_1 = inf
    const auto c = curve_asymptote(scn3, prov);
    CHECK(c.case_tag == "th3.2-gamma-inf");
    // c2^2 * H_1 * int (|f'|^1/eta + 1)^{1} dt = 0.5 * 1 * 2 * 1.5
    CHECK(c.K == doctest::Approx(0.5 * 2.0 * 1.5).epsilon(1e-9));
}

TEST_CASE("curve asymptote with the live Monte Carlo provider") {
    // eta = inf, finite gamma_1: Piterbarg constants estimated at the
    // quadrature nodes with common random numbers and caching
    McConstantsProvider::Settings settings;
    settings.reps = 2000;
    settings.seed = 99;
    settings.piterbarg_S = 2.0;
    settings.ladder_1d = {1.0, 2.0};
    McConstantsProvider prov(settings);

    CurveScenario scn;
    scn.T1 = 0.0;
    scn.T2 = 1.0;
    scn.f = [](double t) { return t; };
    scn.f_prime = [](double) { return 1.0; };
    scn.g = [](double t) { return 1.0 + 0.25 * t; };
    scn.rho1 = {1.0, 0.75};  // alpha1 = 1.5
    scn.rho2 = {1.0, 0.5};   // alpha2 = 1: eta = inf
    scn.v = {1.0, 0.75};     // beta = 1.5 = alpha1: gamma_1 = 1
    const auto asym = curve_asymptote(scn, prov, 1e-4);
    CHECK(asym.case_tag == "th3.3-gamma-finite");
    CHECK(asym.K > 0.0);
    CHECK(std::isfinite(asym.K));
    CHECK(asym.K_se > 0.0);
    CHECK(asym.p == doctest::Approx(2.0));
}

TEST_CASE("curve asymptote rejects a vanishing f' or bad g") {
    auto prov = rich_table();
    auto scn = curve_gamma_zero([](double t) { return (t - 1.5) * (t - 1.5); },
                                [](double t) { return 2.0 * (t - 1.5); });
    CHECK_THROWS_AS(curve_asymptote(scn, prov), std::invalid_argument);
    auto scn2 = curve_gamma_zero([](double t) { return 3.0 * t; }, [](double) { return 3.0; });
    scn2.g = [](double) { return 0.0; };
    CHECK_THROWS_AS(curve_asymptote(scn2, prov), std::invalid_argument);
}

TEST_CASE("fbm-sum corollary branches with pinned constants") {
    auto prov = rich_table();
    // alpha1 = alpha2 = 1: K = 2 hat-H_1^{1,-1}, p = 2
    const auto crit = fbm_sum_asymptote(1.0, 1.0, prov);
    CHECK(crit.case_tag == "cor4.2-crit1");
    CHECK(crit.K == doctest::Approx(2.0 * 2.2).epsilon(1e-12));
    CHECK(crit.p == doctest::Approx(2.0));

    // alpha1 = 0.5, alpha2 = 1: K = 2^{3-2} H(0.5) = 2 * 1.3, p = 4
    const auto mid = fbm_sum_asymptote(0.5, 1.0, prov);
    CHECK(mid.case_tag == "cor4.1-crit1");
    CHECK(mid.K == doctest::Approx(2.0 * 1.3).epsilon(1e-12));
    CHECK(mid.p == doctest::Approx(4.0));

    // alpha1 = alpha2 = 0.5: K = H(0.5)^2 / 3, p = 6
    const auto sub = fbm_sum_asymptote(0.5, 0.5, prov);
    CHECK(sub.case_tag == "cor4.2-sub1");
    CHECK(sub.K == doctest::Approx(1.3 * 1.3 / 3.0).epsilon(1e-10));
    CHECK(sub.p == doctest::Approx(6.0));

    // symmetry under coordinate swap
    const auto swapped = fbm_sum_asymptote(1.0, 0.5, prov);
    CHECK(swapped.K == doctest::Approx(mid.K));
    CHECK(swapped.p == doctest::Approx(mid.p));

    CHECK_THROWS_AS(fbm_sum_asymptote(2.0, 1.0, prov), std::domain_error);
    CHECK_THROWS_AS(fbm_sum_asymptote(0.5, 2.3, prov), std::domain_error);
}

TEST_CASE("fbm-sum alpha>1 integral matches the independent singular quadrature") {
    auto prov = rich_table();
    for (double a : {1.5, 1.6}) {
        const auto asym = fbm_sum_asymptote(a, a, prov);
        const double integral = oracles::integrate_tanh_sinh(
            [a](double t) {
                return std::pow(1.0 + std::pow(t, a * (a - 1.0)) *
                                          std::pow(1.0 - std::pow(t, a), 1.0 - a),
                                1.0 / a);
            },
            0.0, 1.0);
        const double H = prov.pickands_const(a).value;
        const double want = std::pow(2.0, 2.0 - 1.0 / a) * H * integral;
        CHECK(asym.K == doctest::Approx(want).epsilon(1e-6));
        CHECK(asym.p == doctest::Approx(2.0 / a));
    }
}

TEST_CASE("fbm-sum alpha2>1 branch reduces to a pure power of 2") {
    auto prov = rich_table();
    // K = 2^{2-1/a1} (a2/a1) H(a1) int (1-t^{a2})^{1/a1-1} t^{a2-1} dt
    //   = 2^{2-1/a1} H(a1) since the weighted integral is a1/a2 exactly
    const auto asym = fbm_sum_asymptote(0.8, 1.6, prov);
    CHECK(asym.case_tag == "cor4.1-super1");
    CHECK(asym.K == doctest::Approx(std::pow(2.0, 2.0 - 1.0 / 0.8) * 1.2).epsilon(1e-10));
    // cross-check the weighted integral by quadrature
    const double got = oracles::integrate_tanh_sinh(
        [](double t) {
            return std::pow(1.0 - std::pow(t, 1.6), 1.0 / 0.8 - 1.0) * std::pow(t, 0.6);
        },
        0.0, 1.0);
    CHECK(got == doctest::Approx(0.8 / 1.6).epsilon(1e-8));
}

TEST_CASE("specialization consistency: quadrant curve formula vs corollary") {
    // the quadrant piece of the fbm-sum field is the boundary curve scenario
    // with f = (1-t^{a2})^{1/a1}, g = (a1/2)(1-t^{a2})^{1-1/a1}, correlation
    // profiles (x^{a}/2)^{1/2} and v = x^{1/2}; four quadrants add up
    for (double a1 : {0.5, 0.8}) {
        const double a2 = 1.0;
        PinnedConstantsProvider prov;
        prov.set_pickands(a1, 1.0);
        prov.set_piterbarg(a2, 1.0, true, 2.0);  // pinned hat-P_1^1 = 2

        CurveScenario scn;
        scn.T1 = 0.0;
        scn.T2 = 1.0;
        scn.f = [a1, a2](double t) { return std::pow(1.0 - std::pow(t, a2), 1.0 / a1); };
        scn.f_prime = [a1, a2](double t) {
            return -(a2 / a1) * std::pow(1.0 - std::pow(t, a2), 1.0 / a1 - 1.0) *
                   std::pow(t, a2 - 1.0);
        };
        scn.g = [a1, a2](double t) {
            return 0.5 * a1 * std::pow(1.0 - std::pow(t, a2), 1.0 - 1.0 / a1);
        };
        scn.rho1 = {std::sqrt(0.5), a1 / 2.0};
        scn.rho2 = {std::sqrt(0.5), a2 / 2.0};
        scn.v = {1.0, 0.5};
        scn.boundary = true;

        const auto quadrant = curve_asymptote(scn, prov, 1e-10);
        const auto whole = fbm_sum_asymptote(a1, a2, prov);
        CHECK(4.0 * quadrant.K == doctest::Approx(whole.K).epsilon(1e-6));
        CHECK(quadrant.p == doctest::Approx(whole.p).epsilon(1e-14));
    }
}

TEST_CASE("asymptote evaluation decreases for large u") {
    auto prov = rich_table();
    const auto asym = fbm_sum_asymptote(1.0, 1.0, prov);
    double prev = asym.evaluate(2.0);
    for (double u = 2.5; u <= 6.0; u += 0.5) {
        const double cur = asym.evaluate(u);
        CHECK(cur < prev);
        prev = cur;
    }
}
