#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "chemopulse/fitting.hpp"
#include "chemopulse/profiles.hpp"
#include "oracles.hpp"

using namespace chemopulse;

TEST_CASE("solve_wave: mass-amplitude relation and flank rates") {
    const PhysicalParams p = default_params();
    const WaveSolution w = solve_wave(p, 0.25, 2.0);
    CHECK(w.M1 == doctest::Approx(1.5));
    CHECK(w.M2 == doctest::Approx(0.5));
    for (int sp : {1, 2}) {
        auto [lm, lp] = lambda_pm(p, w.sigma, sp);
        CHECK(w.lambda_minus(sp) == lm);
        CHECK(w.lambda_plus(sp) == lp);
        CHECK(lm > 0.0);
        CHECK(lp < 0.0);
        // Mass is the integral of the two flanks: rhoM (1/lm + 1/|lp|),
        // equivalently rhoM 2 chiS D / (chiS^2 - (sigma - chiN)^2).
        CHECK(w.mass(sp) ==
              doctest::Approx(w.rhoM(sp) * (1.0 / lm + 1.0 / std::fabs(lp)))
                  .epsilon(1e-12));
        const double A = p.chiS(sp) * p.chiS(sp) -
                         (w.sigma - p.chiN(sp)) * (w.sigma - p.chiN(sp));
        CHECK(w.mass(sp) ==
              doctest::Approx(w.rhoM(sp) * 2.0 * p.chiS(sp) * p.D(sp) / A)
                  .epsilon(1e-12));
    }
}

TEST_CASE("rho profile: peak value, monotone flanks") {
    const PhysicalParams p = default_params();
    const WaveSolution w = solve_wave(p, 0.0);
    CHECK(rho_profile(w, 1, 0.0) == w.rhoM_1);
    CHECK(rho_profile(w, 2, 0.123) == 0.0); // absent species

    double prev = rho_profile(w, 1, -0.3);
    for (int i = 1; i <= 300; ++i) {
        const double z = -0.3 + 0.3 * i / 300.0;
        const double v = rho_profile(w, 1, z);
        CHECK(v > prev); // strictly increasing left of the peak
        prev = v;
    }
    prev = rho_profile(w, 1, 0.0);
    for (int i = 1; i <= 300; ++i) {
        const double v = rho_profile(w, 1, 0.3 * i / 300.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("kernel: positive, unit at origin, decays both ways") {
    const PhysicalParams p = default_params();
    const double s = 2.447e-4;
    CHECK(kernel_K(p, s, 0.0) == 1.0);
    for (double z : {-0.5, -0.01, 0.01, 0.5}) {
        CHECK(kernel_K(p, s, z) > 0.0);
        CHECK(kernel_K(p, s, z) < 1.0);
    }
    CHECK(kernel_K(p, s, 1.0) < kernel_K(p, s, 0.5));
    CHECK(kernel_K(p, s, -1.0) < kernel_K(p, s, -0.5));
}

TEST_CASE("analytic profiles: mass quadrature against the trapezoid oracle") {
    const PhysicalParams p = default_params();
    const WaveSolution w = solve_wave(p, 0.3);
    for (int sp : {1, 2}) {
        const double span = 20.0 / std::min(w.lambda_minus(sp),
                                            std::fabs(w.lambda_plus(sp)));
        const double mass = oracles::trapezoid(
            [&](double z) { return rho_profile(w, sp, z); }, -span, span, 400000);
        CHECK(mass == doctest::Approx(w.mass(sp)).epsilon(1e-4));
    }
}

TEST_CASE("analytic profiles: S single-peaked at zero, positive, decaying") {
    const PhysicalParams p = default_params();
    const WaveSolution w = solve_wave(p, 0.2);
    std::vector<double> zs;
    for (int i = -400; i <= 400; ++i) zs.push_back(0.3 * i / 400.0);
    const Profiles prof = analytic_profiles(p, w, zs);
    const double S0 = S_profile(p, w, 0.0);
    int sign_changes = 0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        CHECK(prof.S[i] > 0.0);
        CHECK(prof.rho1[i] >= 0.0);
        CHECK(S0 >= prof.S[i]);
        if (i > 0 && (prof.S[i] - prof.S[i - 1]) * (zs[i] <= 0.0 ? 1.0 : -1.0) < 0.0)
            ++sign_changes;
    }
    CHECK(sign_changes == 0); // rises left of 0, falls right of 0
    CHECK(S_profile(p, w, 10.0) < 1e-9 * S0);
    CHECK(S_profile(p, w, -10.0) < 1e-9 * S0);
    // Continuous across the kink at the origin.
    CHECK(S_profile(p, w, -1e-14) == doctest::Approx(S0).epsilon(1e-10));
    CHECK(S_profile(p, w, 1e-14) == doctest::Approx(S0).epsilon(1e-10));
}

TEST_CASE("S profile agrees with direct quadrature of the convolution") {
    const PhysicalParams p = default_params();
    const WaveSolution w = solve_wave(p, 0.15);
    for (double z : {-0.05, 0.0, 0.02, 0.08}) {
        const double direct = oracles::trapezoid(
            [&](double y) {
                return kernel_K(p, w.sigma, z - y) *
                       (rho_profile(w, 1, y) + rho_profile(w, 2, y));
            },
            -1.2, 1.2, 600000);
        CHECK(S_profile(p, w, z) == doctest::Approx(direct).epsilon(1e-7));
    }
}

TEST_CASE("sprime_at_zero: vanishes on dispersion roots, signed off them") {
    const PhysicalParams p = default_params();

    SUBCASE("at the solved two-species speed") {
        const WaveSolution w = solve_wave(p, 0.1);
        const SPrimeParts parts = sprime_parts(p, w);
        CHECK(std::fabs(parts.total) <=
              1e-9 * (std::fabs(parts.s_minus) + std::fabs(parts.s_plus)));
    }

    SUBCASE("single species at sigma1") {
        const WaveSolution w = solve_wave(p, 0.0);
        const SPrimeParts parts = sprime_parts(p, w);
        CHECK(std::fabs(parts.total) <=
              1e-9 * (std::fabs(parts.s_minus) + std::fabs(parts.s_plus)));
    }

    SUBCASE("off the root the derivative is nonzero, same sign as sigma1 - sigma") {
        // Moving the assumed speed above sigma1 leaves g1 > 0 while the
        // factored h stays negative, so S'(0) goes negative; verified
        // against direct numerical differentiation of the closed-form S.
        const BifurcationData bif = admissible_set(p);
        WaveSolution w = solve_wave(p, 0.0);
        const double width = species_interval(p, 1).width();
        w.sigma = bif.sigma1 + 0.1 * width;
        auto [lm, lp] = lambda_pm(p, w.sigma, 1);
        w.lambda_minus_1 = lm;
        w.lambda_plus_1 = lp;
        w.rhoM_1 = amplitude_from_mass(p, w.sigma, 1, w.M1);
        const double closed = sprime_at_zero(p, w);
        CHECK(closed != 0.0);
        CHECK(closed < 0.0); // sign of sigma1 - sigma
        const double h = 1e-5;
        const double numeric =
            (S_profile(p, w, h) - S_profile(p, w, -h)) / (2.0 * h);
        CHECK(numeric == doctest::Approx(closed).epsilon(1e-6));
    }
}

TEST_CASE("fit_parameters: inverse formulas and failure modes") {
    const PhysicalParams p = default_params();

    SUBCASE("round trip from reference rates lands within 1%") {
        auto [lm, lp] = lambda_pm(p, 2.447e-4, 1);
        const FittedParams f = fit_parameters(lm, lp, 2.447e-4, p.D1, p.DS);
        CHECK(f.chiS == doctest::Approx(p.chi1S).epsilon(0.01));
        CHECK(f.chiN == doctest::Approx(p.chi1N).epsilon(0.01));
        CHECK(f.alpha == doctest::Approx(p.alpha).epsilon(0.01));
    }

    SUBCASE("exact round trip at the true dispersion root") {
        const double s1 = sigma_single(p.chi1S, p.chi1N, p.DS, p.alpha);
        auto [lm, lp] = lambda_pm(p, s1, 1);
        const FittedParams f = fit_parameters(lm, lp, s1, p.D1, p.DS);
        CHECK(f.chiS == doctest::Approx(p.chi1S).epsilon(1e-12));
        CHECK(f.chiN == doctest::Approx(p.chi1N).epsilon(1e-12));
        CHECK(f.alpha == doctest::Approx(p.alpha).epsilon(1e-12));
        CHECK(sigma_single(f.chiS, f.chiN, p.DS, f.alpha) ==
              doctest::Approx(s1).epsilon(1e-10));
        // And the recovered parameters reproduce the rates.
        PhysicalParams q = p;
        q.chi1S = f.chiS;
        q.chi1N = f.chiN;
        q.alpha = f.alpha;
        auto [lm2, lp2] = lambda_pm(q, s1, 1);
        CHECK(lm2 == doctest::Approx(lm).epsilon(1e-12));
        CHECK(lp2 == doctest::Approx(lp).epsilon(1e-12));
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(fit_parameters(30.0, -30.0, 2e-4, 1.8e-6, 8e-6), error);
        CHECK_THROWS_AS(fit_parameters(-1.0, -30.0, 2e-4, 1.8e-6, 8e-6), error);
        CHECK_THROWS_AS(fit_parameters(30.0, 1.0, 2e-4, 1.8e-6, 8e-6), error);
        CHECK_THROWS_AS(fit_parameters(30.0, -20.0, 0.0, 1.8e-6, 8e-6), error);
        try {
            fit_parameters(30.0, -30.0, 2e-4, 1.8e-6, 8e-6);
        } catch (const error& e) {
            CHECK(e.code() == errc::singular_fit);
        }
    }
}
