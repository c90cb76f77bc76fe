#ifndef CHEMOPULSE_SWEEP_HPP
#define CHEMOPULSE_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "chemopulse/dispersion.hpp"
#include "chemopulse/errors.hpp"
#include "chemopulse/simulation.hpp"
#include "chemopulse/tracking.hpp"

namespace chemopulse {

struct SweepRow {
    double phi_red = 0;
    std::optional<double> speed_slow;      ///< fitted speed of the slow species
    std::optional<double> speed_fast;      ///< fitted speed of the fast species
    Regime regime = Regime::indeterminate;
    std::optional<double> sigma_analytic;  ///< dispersion-relation speed, if it exists
    std::string error_message;             ///< non-empty when this row's job failed

    bool ok() const { return error_message.empty(); }
};

/// Bifurcation-diagram table: one simulated row per requested fraction,
/// with the analytic overlay attached.
struct SweepResult {
    std::vector<SweepRow> rows;
    BifurcationData bif; ///< includes phi* and lambda*
};

struct SweepConfig {
    SimSetup base;                 ///< per-row copy with phi_red replaced
    std::vector<double> phis;      ///< fractions to simulate (sorted internally)
    double discard_fraction = 0.3; ///< transient share dropped before fitting
    double split_widths = 5.0;
    double single_widths = 2.0;
    unsigned workers = 0;          ///< 0: one per hardware thread

    /// Called from the row's worker with its snapshot stream (e.g. to
    /// write a kymograph). Each row owns its own call; the callback must
    /// not touch shared mutable state.
    std::function<void(std::size_t index, double phi, const std::vector<SimState>&)>
        on_snapshots;
};

namespace detail {

inline SweepRow sweep_one(const SweepConfig& cfg, const PhysicalParams& labeled,
                          const BifurcationData& bif, std::size_t index, double phi) {
    SweepRow row;
    row.phi_red = phi;
    if (phi < 1.0) {
        TwoSpeciesSpeed analytic = sigma_two(labeled, phi);
        if (analytic.sigma) row.sigma_analytic = *analytic.sigma;
    } // phi = 1 lies beyond phi*: the overlay column stays empty

    SimSetup setup = cfg.base;
    setup.params = labeled;
    setup.phi_red = phi;
    std::vector<SimState> snaps = run(setup);
    if (cfg.on_snapshots) cfg.on_snapshots(index, phi, snaps);

    RegimeThresholds th;
    auto [lm1, lp1] = lambda_pm(labeled, bif.sigma1, 1);
    th.pulse_width = 1.0 / lm1 + 1.0 / std::fabs(lp1);
    th.split_widths = cfg.split_widths;
    th.single_widths = cfg.single_widths;
    th.monotone_slack = 0.5 * setup.grid.dx();

    std::optional<TrackRecord> slow, fast;
    if (phi < 1.0) {
        slow = track_peaks(snaps, setup.grid, 1);
        row.speed_slow = fit_speed(*slow, cfg.discard_fraction);
    }
    if (phi > 0.0) {
        fast = track_peaks(snaps, setup.grid, 2);
        row.speed_fast = fit_speed(*fast, cfg.discard_fraction);
    }
    row.regime = (slow && fast) ? classify_regime(*slow, *fast, th) : Regime::single;
    return row;
}

} // namespace detail

/// Run one independent simulation per fraction (concurrently) and fit,
/// classify and annotate each row. Per-row failures are recorded in the
/// row and do not stop the sweep. The total mass is the same for every
/// row; only the composition changes.
inline SweepResult sweep_phi(const SweepConfig& cfg_in) {
    SweepConfig cfg = cfg_in;
    std::sort(cfg.phis.begin(), cfg.phis.end());
    cfg.phis.erase(std::unique(cfg.phis.begin(), cfg.phis.end()), cfg.phis.end());
    if (cfg.phis.empty())
        throw error(errc::invalid_parameter, "sweep needs at least one phi value");
    for (double phi : cfg.phis)
        if (!(phi >= 0.0 && phi <= 1.0))
            throw error(errc::invalid_parameter, "sweep phi values must lie in [0, 1]");
    cfg.base.validate();

    SweepResult out;
    out.bif = phi_star(cfg.base.params);
    const PhysicalParams labeled = out.bif.species_swapped
                                       ? detail::swap_species(cfg.base.params)
                                       : cfg.base.params;

    out.rows.resize(cfg.phis.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.phis.size()) return;
            try {
                out.rows[i] = detail::sweep_one(cfg, labeled, out.bif, i, cfg.phis[i]);
            } catch (const std::exception& e) {
                out.rows[i].phi_red = cfg.phis[i];
                out.rows[i].error_message = e.what();
                out.rows[i].regime = Regime::indeterminate;
            }
        }
    };
    unsigned n_workers = cfg.workers ? cfg.workers : std::thread::hardware_concurrency();
    n_workers = std::max(1u, std::min<unsigned>(n_workers, cfg.phis.size()));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

} // namespace chemopulse

#endif
