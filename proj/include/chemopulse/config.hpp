#ifndef CHEMOPULSE_CONFIG_HPP
#define CHEMOPULSE_CONFIG_HPP

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chemopulse/errors.hpp"
#include "chemopulse/params.hpp"
#include "chemopulse/simulation.hpp"
#include "chemopulse/text_format.hpp"

namespace chemopulse {

/// Everything a CLI run needs. Loaded from a flat key = value text file
/// (dotted keys, one assignment per line, '#' comments); every key has a
/// documented default, unknown keys are rejected.
struct RunConfig {
    PhysicalParams params = default_params();
    double L = 1.8;
    int nx = 900;
    double t_end = 4000.0;
    double cfl = 0.9;
    int snapshot_stride = 25;
    double M_total = 1.0;
    double phi_red = 0.0;
    double ell0 = 0.05;
    double N0 = 1.0;
    double discard_fraction = 0.3;
    std::string out_dir = "out";
    std::string formats = "csv,ppm";

    /// The consumption rates default to the depletion-time rule
    /// gamma * (M_total / L) = 1 / 100 s; explicit values win.
    bool gamma_given = false;

    void validate() const {
        params.validate();
        auto positive = [](double v, const char* name) {
            if (!std::isfinite(v) || v <= 0.0)
                throw error(errc::config_invalid, std::string(name) + " must be > 0");
        };
        positive(L, "grid.L");
        if (nx < 8) throw error(errc::config_invalid, "grid.nx must be >= 8");
        if (!std::isfinite(t_end) || t_end < 0.0)
            throw error(errc::config_invalid, "time.t_end must be >= 0");
        if (!(cfl > 0.0 && cfl <= 1.0))
            throw error(errc::config_invalid, "time.cfl must lie in (0, 1]");
        if (snapshot_stride < 1)
            throw error(errc::config_invalid, "time.snapshot_stride must be >= 1");
        positive(M_total, "init.M_total");
        if (!(phi_red >= 0.0 && phi_red <= 1.0))
            throw error(errc::config_invalid, "init.phi_red must lie in [0, 1]");
        positive(ell0, "init.ell0");
        positive(N0, "init.N0");
        if (!(discard_fraction >= 0.0 && discard_fraction < 1.0))
            throw error(errc::config_invalid,
                        "fit.discard_fraction must lie in [0, 1)");
    }

    SimSetup setup() const {
        SimSetup s;
        s.params = params;
        s.grid = Grid1D(L, nx);
        s.cfl = cfl;
        s.t_end = t_end;
        s.snapshot_stride = snapshot_stride;
        s.M_total = M_total;
        s.phi_red = phi_red;
        s.ell0 = ell0;
        s.N0 = N0;
        return s;
    }
};

/// Default consumption rate: the mean density M_total / L depletes the
/// nutrient on a 100 s scale.
inline double default_consumption_rate(double L, double M_total) {
    return L / (100.0 * M_total);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace detail

/// Parse configuration text. Missing keys keep their defaults; unknown
/// keys and malformed lines are reported with their line number.
inline RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::map<std::string, std::function<void(double)>, std::less<>> num_keys;
    auto bind = [&](const char* key, double& slot) {
        num_keys.emplace(key, [&slot](double v) { slot = v; });
    };
    bind("params.D1", cfg.params.D1);
    bind("params.D2", cfg.params.D2);
    bind("params.DS", cfg.params.DS);
    bind("params.DN", cfg.params.DN);
    bind("params.alpha", cfg.params.alpha);
    bind("params.chi1S", cfg.params.chi1S);
    bind("params.chi2S", cfg.params.chi2S);
    bind("params.chi1N", cfg.params.chi1N);
    bind("params.chi2N", cfg.params.chi2N);
    num_keys.emplace("params.gamma1", [&cfg](double v) {
        cfg.params.gamma1 = v;
        cfg.gamma_given = true;
    });
    num_keys.emplace("params.gamma2", [&cfg](double v) {
        cfg.params.gamma2 = v;
        cfg.gamma_given = true;
    });
    auto as_int = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1e9) || v != std::floor(v))
            throw error(errc::config_invalid,
                        std::string(name) + " must be a nonnegative integer");
        return static_cast<int>(v);
    };
    bind("grid.L", cfg.L);
    num_keys.emplace("grid.nx",
                     [&cfg, as_int](double v) { cfg.nx = as_int(v, "grid.nx"); });
    bind("time.t_end", cfg.t_end);
    bind("time.cfl", cfg.cfl);
    num_keys.emplace("time.snapshot_stride", [&cfg, as_int](double v) {
        cfg.snapshot_stride = as_int(v, "time.snapshot_stride");
    });
    bind("init.M_total", cfg.M_total);
    bind("init.phi_red", cfg.phi_red);
    bind("init.ell0", cfg.ell0);
    bind("init.N0", cfg.N0);
    bind("fit.discard_fraction", cfg.discard_fraction);

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = detail::trim(text.substr(pos, nl - pos));
        ++line_no;
        pos = nl + 1;
        if (line.empty() || line.front() == '#') {
            if (nl == text.size()) break;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw error(errc::config_parse,
                        "line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key == "outputs.directory") {
            cfg.out_dir = std::string(value);
        } else if (key == "outputs.formats") {
            cfg.formats = std::string(value);
        } else {
            auto it = num_keys.find(key);
            if (it == num_keys.end())
                throw error(errc::config_parse,
                            "line " + std::to_string(line_no) + ": unknown key '" + key +
                                "'");
            double v;
            try {
                v = parse_double(value);
            } catch (const error&) {
                throw error(errc::config_parse, "line " + std::to_string(line_no) +
                                                    ": bad number for '" + key + "'");
            }
            it->second(v);
        }
        if (nl == text.size()) break;
    }

    if (!cfg.gamma_given) {
        const double gamma = default_consumption_rate(cfg.L, cfg.M_total);
        cfg.params.gamma1 = gamma;
        cfg.params.gamma2 = gamma;
    }
    cfg.validate();
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    return parse_config(read_file(path));
}

} // namespace chemopulse

#endif
