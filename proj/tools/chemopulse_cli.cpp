// Command-line front end: dispersion analysis, bifurcation threshold,
// analytic profiles, channel simulation, the phi sweep and parameter
// fitting, with CSV/PPM outputs.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chemopulse/chemopulse.hpp"

namespace cp = chemopulse;
namespace fs = std::filesystem;

namespace {

int exit_code_for(cp::errc code) {
    switch (code) {
        case cp::errc::config_parse:
        case cp::errc::config_invalid:
        case cp::errc::invalid_parameter:
            return 2;
        case cp::errc::bifurcation_undefined:
            return 4;
        default:
            return 3;
    }
}

std::string out_path(const cp::RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    return (fs::path(cfg.out_dir) / name).string();
}

std::string fmt(double v) { return cp::format_double(v); }

void print_interval(const char* name, const cp::Interval& I) {
    if (I.is_empty())
        std::cout << name << " = empty\n";
    else
        std::cout << name << " = [" << fmt(I.lo) << ", " << fmt(I.hi) << "]\n";
}

int cmd_dispersion(const cp::RunConfig& cfg) {
    const cp::BifurcationData bif = cp::admissible_set(cfg.params);
    const cp::PhysicalParams p =
        bif.species_swapped ? cp::detail::swap_species(cfg.params) : cfg.params;
    std::cout << "sigma1 = " << fmt(bif.sigma1) << " cm/s\n"
              << "sigma2 = " << fmt(bif.sigma2) << " cm/s\n";
    print_interval("I1", cp::species_interval(p, 1));
    print_interval("I2", cp::species_interval(p, 2));
    print_interval("Omega", bif.omega);
    std::cout << "hypothesis_holds = " << (bif.hypothesis_holds ? "true" : "false")
              << "\n";
    if (bif.species_swapped)
        std::cout << "note: species relabeled so that sigma1 < sigma2\n";
    if (!bif.hypothesis_holds) std::cout << "failed clause: " << bif.failed_clause << "\n";

    cp::CsvTable t;
    t.header = {"sigma_candidate", "g1", "g2", "H", "G"};
    if (bif.hypothesis_holds) {
        const int n = 1000;
        for (int i = 0; i < n; ++i) {
            const double s = cp::detail::omega_sample(bif.omega, i, n);
            t.rows.push_back({fmt(s), fmt(cp::g_func(p, s, 1)), fmt(cp::g_func(p, s, 2)),
                              fmt(cp::H_func(p, s)), fmt(cp::G_func(p, s, bif))});
        }
    }
    cp::write_file(out_path(cfg, "dispersion.csv"), t.serialize());
    return 0;
}

int cmd_phistar(const cp::RunConfig& cfg) {
    const cp::BifurcationData bif = cp::phi_star(cfg.params);
    const cp::PhysicalParams p =
        bif.species_swapped ? cp::detail::swap_species(cfg.params) : cfg.params;
    std::cout << "lambda_star = " << fmt(bif.lambda_star) << "\n"
              << "phi_star = " << fmt(bif.phi_star) << "\n"
              << "sigma_star = " << fmt(bif.sigma_star) << " cm/s\n";
    cp::CsvTable t;
    t.header = {"sigma", "G"};
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        const double s = cp::detail::omega_sample(bif.omega, i, n);
        t.rows.push_back({fmt(s), fmt(cp::G_func(p, s, bif))});
    }
    cp::write_file(out_path(cfg, "g_curve.csv"), t.serialize());
    return 0;
}

int cmd_profiles(const cp::RunConfig& cfg, double phi) {
    const cp::WaveSolution w = cp::solve_wave(cfg.params, phi, cfg.M_total);
    std::cout << "sigma = " << fmt(w.sigma) << " cm/s\n";
    // Window wide enough to cover both flanks down to ~1e-9 of the peak.
    double span = 0.0;
    for (int sp : {1, 2})
        if (w.has_species(sp))
            span = std::max(span, 21.0 / std::min(w.lambda_minus(sp),
                                                  std::fabs(w.lambda_plus(sp))));
    const int n = 2001;
    cp::CsvTable t;
    t.header = {"z", "rho1", "rho2", "S"};
    std::vector<double> zs(n);
    for (int i = 0; i < n; ++i) zs[i] = -span + 2.0 * span * i / (n - 1);
    const cp::Profiles prof = cp::analytic_profiles(cfg.params, w, zs);
    for (int i = 0; i < n; ++i)
        t.rows.push_back(
            {fmt(zs[i]), fmt(prof.rho1[i]), fmt(prof.rho2[i]), fmt(prof.S[i])});
    cp::write_file(out_path(cfg, "profiles.csv"), t.serialize());
    return 0;
}

void write_track_csv(const cp::RunConfig& cfg,
                     const std::vector<cp::TrackRecord>& tracks) {
    cp::CsvTable t;
    t.header = {"t", "species", "x_peak", "peak_height"};
    for (const auto& tr : tracks)
        for (const auto& pt : tr.points)
            t.rows.push_back({fmt(pt.t), cp::format_int(tr.species), fmt(pt.x_peak),
                              fmt(pt.peak_height)});
    cp::write_file(out_path(cfg, "track.csv"), t.serialize());
}

int cmd_simulate(const cp::RunConfig& cfg) {
    const std::vector<cp::SimState> snaps = cp::run(cfg.setup());
    const cp::Grid1D grid(cfg.L, cfg.nx);

    cp::CsvTable t;
    t.header = {"t", "x", "rho1", "rho2", "S", "N"};
    for (const auto& st : snaps)
        for (int k = 0; k < grid.nx; ++k)
            t.rows.push_back({fmt(st.t), fmt(grid.x(k)), fmt(st.rho1[k]), fmt(st.rho2[k]),
                              fmt(st.S[k]), fmt(st.N[k])});
    cp::write_file(out_path(cfg, "snapshots.csv"), t.serialize());

    std::vector<cp::TrackRecord> tracks;
    if (snaps.size() >= 2) {
        for (int sp : {1, 2}) {
            if (snaps.front().mass(sp, grid.dx()) <= 0.0) continue;
            cp::TrackRecord rec = cp::track_peaks(snaps, grid, sp);
            try {
                cp::fit_speed(rec, cfg.discard_fraction);
                std::cout << "species " << sp << ": fitted speed = " << fmt(rec.speed)
                          << " cm/s (rms " << fmt(rec.residual_rms) << " cm)\n";
            } catch (const cp::error&) {
                // too few points to fit; the raw track is still written
            }
            tracks.push_back(std::move(rec));
        }
    }
    write_track_csv(cfg, tracks);
    cp::write_file(out_path(cfg, "kymograph.ppm"),
                   cp::encode_ppm(cp::render_kymograph(snaps)));
    return 0;
}

int cmd_sweep(const cp::RunConfig& cfg, const std::vector<double>& phis) {
    fs::create_directories(cfg.out_dir); // workers write their kymographs here
    cp::SweepConfig sc;
    sc.base = cfg.setup();
    sc.phis = phis;
    sc.discard_fraction = cfg.discard_fraction;
    cp::RunConfig cfg_copy = cfg; // for the callback's output paths
    sc.on_snapshots = [&cfg_copy](std::size_t, double phi,
                                  const std::vector<cp::SimState>& snaps) {
        cp::write_file(out_path(cfg_copy, "kymograph_phi_" + fmt(phi) + ".ppm"),
                       cp::encode_ppm(cp::render_kymograph(snaps)));
    };
    const cp::SweepResult result = cp::sweep_phi(sc);

    std::cout << "phi_star = " << fmt(result.bif.phi_star) << "\n";
    cp::CsvTable t;
    t.header = {"phi_red", "speed_slow", "speed_fast", "regime", "sigma_analytic",
                "phi_star"};
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
    for (const auto& row : result.rows) {
        if (!row.ok())
            std::cerr << "warning: phi = " << fmt(row.phi_red) << ": "
                      << row.error_message << "\n";
        t.rows.push_back({fmt(row.phi_red), opt(row.speed_slow), opt(row.speed_fast),
                          cp::regime_name(row.regime), opt(row.sigma_analytic),
                          fmt(result.bif.phi_star)});
    }
    cp::write_file(out_path(cfg, "bifurcation.csv"), t.serialize());
    return 0;
}

int cmd_fit(const cp::RunConfig& cfg, double lm, double lp, double sigma, double D,
            std::optional<double> DS) {
    const cp::FittedParams f =
        cp::fit_parameters(lm, lp, sigma, D, DS ? *DS : cfg.params.DS);
    std::cout << "chiS = " << fmt(f.chiS) << " cm/s\n"
              << "chiN = " << fmt(f.chiN) << " cm/s\n"
              << "alpha = " << fmt(f.alpha) << " 1/s\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-species chemotaxis traveling-pulse laboratory"};
    app.require_subcommand(1);
    app.fallthrough(); // accept -c/-o after the subcommand as well

    std::string config_path;
    std::string out_dir;
    app.add_option("-c,--config", config_path, "configuration file (key = value lines)");
    app.add_option("-o,--out-dir", out_dir, "output directory (overrides config)");

    auto* sub_dispersion =
        app.add_subcommand("dispersion", "pure-species speeds, admissible set, hypothesis");
    auto* sub_phistar =
        app.add_subcommand("phistar", "critical fraction phi* and the G curve");
    auto* sub_profiles =
        app.add_subcommand("profiles", "analytic pulse profiles at a given phi_red");
    double profiles_phi = 0.0;
    sub_profiles->add_option("--phi", profiles_phi, "fast-population fraction")
        ->check(CLI::Range(0.0, 1.0));
    auto* sub_simulate = app.add_subcommand("simulate", "run one channel simulation");
    auto* sub_sweep = app.add_subcommand("sweep", "bifurcation diagram over phi_red");
    std::vector<double> sweep_phis;
    sub_sweep->add_option("--phis", sweep_phis, "phi_red values")
        ->required()
        ->delimiter(',');
    auto* sub_fit = app.add_subcommand("fit", "invert flank rates and speed into parameters");
    double fit_lm = 0, fit_lp = 0, fit_sigma = 0, fit_D = 0;
    std::optional<double> fit_DS;
    sub_fit->add_option("--lm", fit_lm, "back-flank rate lambda_minus [1/cm]")->required();
    sub_fit->add_option("--lp", fit_lp, "front-flank rate lambda_plus [1/cm]")->required();
    sub_fit->add_option("--sigma", fit_sigma, "wave speed [cm/s]")->required();
    sub_fit->add_option("--d", fit_D, "bacterial diffusivity [cm^2/s]")->required();
    sub_fit->add_option("--ds", fit_DS, "chemoattractant diffusivity [cm^2/s]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        cp::RunConfig cfg =
            config_path.empty() ? cp::RunConfig{} : cp::load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        cfg.validate();
        if (sub_dispersion->parsed()) return cmd_dispersion(cfg);
        if (sub_phistar->parsed()) return cmd_phistar(cfg);
        if (sub_profiles->parsed()) return cmd_profiles(cfg, profiles_phi);
        if (sub_simulate->parsed()) return cmd_simulate(cfg);
        if (sub_sweep->parsed()) return cmd_sweep(cfg, sweep_phis);
        if (sub_fit->parsed()) return cmd_fit(cfg, fit_lm, fit_lp, fit_sigma, fit_D, fit_DS);
    } catch (const cp::error& e) {
        std::cerr << "error[" << cp::errc_name(e.code()) << "]: " << e.message() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
