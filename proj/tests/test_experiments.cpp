#include <doctest.h>

#include <cmath>
#include <vector>

#include "chemopulse/dispersion.hpp"
#include "chemopulse/kymograph.hpp"
#include "chemopulse/profiles.hpp"
#include "chemopulse/sweep.hpp"
#include "chemopulse/tracking.hpp"

using namespace chemopulse;

namespace {

SimState state_with_rho1(double t, std::vector<double> rho1) {
    SimState st;
    st.t = t;
    st.rho2.assign(rho1.size(), 0.0);
    st.S.assign(rho1.size(), 0.0);
    st.N.assign(rho1.size(), 1.0);
    st.rho1 = std::move(rho1);
    return st;
}

} // namespace

TEST_CASE("track_peaks: translation equivariance") {
    const int nx = 64;
    const Grid1D grid(6.4, nx);
    std::vector<double> base(nx, 0.0);
    for (int k = 10; k < 20; ++k) base[k] = 10.0 - std::fabs(k - 15.0);

    std::vector<SimState> snaps;
    for (int shift = 0; shift < 5; ++shift) {
        std::vector<double> f(nx, 0.0);
        for (int k = 0; k < nx; ++k)
            if (k - shift >= 0) f[k] = base[k - shift];
        snaps.push_back(state_with_rho1(10.0 * shift, std::move(f)));
    }
    const TrackRecord rec = track_peaks(snaps, grid, 1);
    REQUIRE(rec.points.size() == 5);
    for (std::size_t i = 1; i < rec.points.size(); ++i)
        CHECK(rec.points[i].x_peak - rec.points[i - 1].x_peak ==
              doctest::Approx(grid.dx()).epsilon(1e-12));
}

TEST_CASE("track_peaks: plateau tie resolves to the leftmost cell") {
    const Grid1D grid(0.8, 8); // dx = 0.1
    std::vector<SimState> snaps;
    snaps.push_back(state_with_rho1(0.0, {1.0, 3.0, 3.0, 3.0, 1.0, 0.0, 0.0, 0.0}));
    snaps.push_back(state_with_rho1(1.0, {1.0, 3.0, 3.0, 3.0, 1.0, 0.0, 0.0, 0.0}));
    const TrackRecord rec = track_peaks(snaps, grid, 1);
    // Leftmost plateau cell is k = 1; the parabola through (1, 3, 3)
    // pushes the refined position half a cell right of its center.
    CHECK(rec.points[0].x_peak == doctest::Approx(grid.x(1) + 0.05).epsilon(1e-12));
}

TEST_CASE("track_peaks: refined peak of the analytic pulse lands within dx/2") {
    const PhysicalParams p = default_params();
    const WaveSolution w = solve_wave(p, 0.0);
    const int nx = 256;
    const Grid1D grid(0.512, nx); // dx = 2e-3, peak at z = 0 maps to x = 0.256
    const double x_peak_true = 0.256;
    std::vector<double> f(nx);
    for (int k = 0; k < nx; ++k) f[k] = rho_profile(w, 1, grid.x(k) - x_peak_true);
    std::vector<SimState> snaps = {state_with_rho1(0.0, f), state_with_rho1(1.0, f)};
    const TrackRecord rec = track_peaks(snaps, grid, 1);
    CHECK(std::fabs(rec.points[0].x_peak - x_peak_true) <= 0.5 * grid.dx());
}

TEST_CASE("track_peaks: zero density reports no peak") {
    const Grid1D grid(1.0, 10);
    std::vector<SimState> snaps = {state_with_rho1(0.0, std::vector<double>(10, 0.0)),
                                   state_with_rho1(1.0, std::vector<double>(10, 0.0))};
    CHECK_THROWS_AS(track_peaks(snaps, grid, 1), error);
}

TEST_CASE("fit_speed: exact lines are recovered to round-off") {
    TrackRecord rec;
    rec.species = 1;
    for (int i = 0; i < 20; ++i)
        rec.points.push_back({100.0 * i, 1e-4 * (100.0 * i), 1.0});
    const double v = fit_speed(rec, 0.3);
    CHECK(v == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(rec.residual_rms <= 1e-15); // round-off on O(0.1 cm) positions
    CHECK(rec.fitted);
    CHECK(rec.fit_t0 >= 0.3 * 1900.0);

    TrackRecord affine;
    affine.species = 1;
    for (int i = 0; i < 5; ++i)
        affine.points.push_back({10.0 * i, 0.3 + 2.5e-4 * (10.0 * i), 1.0});
    CHECK(fit_speed(affine, 0.0) == doctest::Approx(2.5e-4).epsilon(1e-12));

    TrackRecord tiny;
    tiny.species = 1;
    for (int i = 0; i < 5; ++i) tiny.points.push_back({10.0 * i, 0.0, 1.0});
    CHECK_THROWS_AS(fit_speed(tiny, 0.5), error); // only 3 points survive
}

TEST_CASE("classify_regime: threshold arithmetic") {
    RegimeThresholds th;
    th.pulse_width = 0.0572; // analytic width of the slow pulse

    auto make_pair = [](double dv, int n, double dt) {
        TrackRecord a, b;
        a.species = 1;
        b.species = 2;
        for (int i = 0; i < n; ++i) {
            const double t = dt * i;
            a.points.push_back({t, 0.2 + 2.4e-4 * t, 1.0});
            b.points.push_back({t, 0.2 + (2.4e-4 + dv) * t, 1.0});
        }
        return std::pair{a, b};
    };

    SUBCASE("identical tracks are a single pulse") {
        auto [a, b] = make_pair(0.0, 30, 100.0);
        CHECK(classify_regime(a, b, th) == Regime::single);
    }

    SUBCASE("linear divergence to a centimeter is a split") {
        auto [a, b] = make_pair(1e-4, 30, 10000.0 / 29.0);
        CHECK(classify_regime(a, b, th) == Regime::split);
    }

    SUBCASE("large but shrinking separation is indeterminate") {
        TrackRecord a, b;
        a.species = 1;
        b.species = 2;
        for (int i = 0; i < 30; ++i) {
            const double t = 100.0 * i;
            a.points.push_back({t, 0.2, 1.0});
            b.points.push_back({t, 1.2 - 1e-5 * t, 1.0}); // approaching
        }
        CHECK(classify_regime(a, b, th) == Regime::indeterminate);
    }
}

TEST_CASE("render_kymograph: normalization and guarded zero channel") {
    SUBCASE("single nonzero cell saturates its pixel") {
        std::vector<double> f(8, 0.0);
        f[3] = 7.0;
        std::vector<SimState> snaps = {state_with_rho1(0.0, f)};
        const Kymograph k = render_kymograph(snaps);
        CHECK(k.rows == 1);
        CHECK(k.cols == 8);
        for (int c = 0; c < 8; ++c) {
            CHECK(k.g(0, c) == (c == 3 ? 1.0 : 0.0));
            CHECK(k.r(0, c) == 0.0); // empty red channel, no division by zero
        }
    }

    SUBCASE("normalization is global across rows") {
        std::vector<SimState> snaps;
        std::vector<double> f1(4, 0.0), f2(4, 0.0);
        f1[1] = 2.0;
        f2[2] = 4.0;
        snaps.push_back(state_with_rho1(0.0, f1));
        snaps.push_back(state_with_rho1(1.0, f2));
        const Kymograph k = render_kymograph(snaps);
        CHECK(k.g(0, 1) == doctest::Approx(0.5));
        CHECK(k.g(1, 2) == doctest::Approx(1.0));
    }
}

TEST_CASE("mixture speed tracks the dispersion relation below phi*") {
    const PhysicalParams p = default_params();
    const double phi = 0.2; // well under 0.8 phi*
    const TwoSpeciesSpeed analytic = sigma_two(p, phi);
    REQUIRE(analytic.sigma.has_value());

    auto measured = [&](int nx) {
        SimSetup setup;
        setup.params = p;
        setup.grid = Grid1D(1.8, nx);
        setup.t_end = 3000.0;
        setup.phi_red = phi;
        const auto snaps = run(setup);
        TrackRecord rec = track_peaks(snaps, setup.grid, 1);
        return fit_speed(rec, 0.3);
    };
    const double err900 = std::fabs(measured(900) - *analytic.sigma) / *analytic.sigma;
    const double err1800 = std::fabs(measured(1800) - *analytic.sigma) / *analytic.sigma;
    CHECK(err900 <= 0.05);
    CHECK(err1800 < err900); // first-order bias shrinks with dx
}

TEST_CASE("sweep with a pure fast-species row") {
    // dx = 10 um so the first-order speed bias stays well under 5%.
    SweepConfig sc;
    sc.base.params = default_params();
    sc.base.grid = Grid1D(0.9, 900);
    sc.base.t_end = 2000.0;
    sc.phis = {1.0};
    const SweepResult res = sweep_phi(sc);
    REQUIRE(res.rows.size() == 1);
    const SweepRow& row = res.rows[0];
    REQUIRE(row.ok());
    CHECK(row.regime == Regime::single);
    CHECK_FALSE(row.speed_slow.has_value());
    CHECK_FALSE(row.sigma_analytic.has_value()); // phi = 1 lies beyond phi*
    REQUIRE(row.speed_fast.has_value());
    const double s2 = sigma_single(sc.base.params.chi2S, sc.base.params.chi2N,
                                   sc.base.params.DS, sc.base.params.alpha);
    CHECK(std::fabs(*row.speed_fast - s2) <= 0.05 * s2);
}

TEST_CASE("solve_wave covers both pure-species limits and fails past phi*") {
    const PhysicalParams p = default_params();
    const BifurcationData bif = phi_star(p);
    CHECK(solve_wave(p, 0.0).sigma == bif.sigma1);
    CHECK(solve_wave(p, 1.0).sigma == bif.sigma2);
    CHECK_THROWS_AS(solve_wave(p, std::min(0.99, bif.phi_star * 1.1)), error);
}

TEST_CASE("sweep rows are invariant under species relabeling") {
    SweepConfig sc;
    sc.base.params = default_params();
    sc.base.grid = Grid1D(0.3, 150);
    sc.base.t_end = 400.0;
    sc.phis = {0.3};
    sc.workers = 1;
    const SweepResult a = sweep_phi(sc);
    sc.base.params = detail::swap_species(sc.base.params);
    const SweepResult b = sweep_phi(sc);
    REQUIRE(a.rows.size() == 1);
    REQUIRE(b.rows.size() == 1);
    CHECK(b.bif.species_swapped);
    REQUIRE(a.rows[0].ok());
    REQUIRE(b.rows[0].ok());
    CHECK(a.rows[0].speed_slow == b.rows[0].speed_slow); // bitwise: same labeled run
    CHECK(a.rows[0].speed_fast == b.rows[0].speed_fast);
    CHECK(a.rows[0].regime == b.rows[0].regime);
    CHECK(a.bif.phi_star == b.bif.phi_star);
}

TEST_CASE("encode_ppm: exact bytes for a tiny image") {
    std::vector<double> f = {0.0, 7.0};
    std::vector<SimState> snaps = {state_with_rho1(0.0, f)};
    const Kymograph k = render_kymograph(snaps);
    const std::string ppm = encode_ppm(k);
    const std::string header = "P6\n2 1\n255\n";
    REQUIRE(ppm.size() == header.size() + 6);
    CHECK(ppm.compare(0, header.size(), header) == 0);
    const unsigned char* px = reinterpret_cast<const unsigned char*>(ppm.data() + header.size());
    // (R,G,B) per pixel: red channel empty, green saturates in cell 1.
    CHECK(px[0] == 0);
    CHECK(px[1] == 0);
    CHECK(px[2] == 0);
    CHECK(px[3] == 0);
    CHECK(px[4] == 255);
    CHECK(px[5] == 0);
}
