#ifndef CHEMOPULSE_SIMULATION_HPP
#define CHEMOPULSE_SIMULATION_HPP

#include <cmath>
#include <string>
#include <vector>

#include "chemopulse/errors.hpp"
#include "chemopulse/grid.hpp"
#include "chemopulse/params.hpp"
#include "chemopulse/scheme.hpp"

namespace chemopulse {

/// Full description of one channel run: physics, discretization,
/// duration and the post-centrifugation initial condition (both species
/// piled against the left wall with an exponential profile, no
/// chemoattractant, uniform nutrient).
struct SimSetup {
    PhysicalParams params;
    Grid1D grid{1.8, 900};
    double cfl = 0.9;
    double t_end = 4000.0;      ///< [s]
    int snapshot_stride = 25;   ///< record every this many steps
    double M_total = 1.0;       ///< total bacterial mass [density * cm]
    double phi_red = 0.0;       ///< fast-population fraction of M_total
    double ell0 = 0.05;         ///< initial pile decay length [cm]
    double N0 = 1.0;            ///< initial nutrient level

    void validate() const {
        params.validate();
        if (!(cfl > 0.0 && cfl <= 1.0))
            throw error(errc::invalid_parameter, "cfl must lie in (0, 1]");
        if (!std::isfinite(t_end) || t_end < 0.0)
            throw error(errc::invalid_parameter, "t_end must be >= 0");
        if (snapshot_stride < 1)
            throw error(errc::invalid_parameter, "snapshot_stride must be >= 1");
        if (!std::isfinite(M_total) || M_total < 0.0)
            throw error(errc::invalid_parameter, "M_total must be >= 0");
        if (!std::isfinite(phi_red) || phi_red < 0.0 || phi_red > 1.0)
            throw error(errc::invalid_parameter, "phi_red must lie in [0, 1]");
        if (!std::isfinite(ell0) || ell0 <= 0.0)
            throw error(errc::invalid_parameter, "ell0 must be > 0");
        if (!std::isfinite(N0) || N0 < 0.0)
            throw error(errc::invalid_parameter, "N0 must be >= 0");
    }
};

inline SimState initial_state(const SimSetup& setup) {
    setup.validate();
    const int nx = setup.grid.nx;
    const double dx = setup.grid.dx();
    SimState st;
    st.t = 0.0;
    st.rho1.resize(nx);
    st.rho2.resize(nx);
    st.S.assign(nx, 0.0);
    st.N.assign(nx, setup.N0);
    double norm = 0.0;
    for (int k = 0; k < nx; ++k) norm += std::exp(-setup.grid.x(k) / setup.ell0) * dx;
    const double M1 = (1.0 - setup.phi_red) * setup.M_total;
    const double M2 = setup.phi_red * setup.M_total;
    for (int k = 0; k < nx; ++k) {
        const double shape = std::exp(-setup.grid.x(k) / setup.ell0) / norm;
        st.rho1[k] = M1 * shape;
        st.rho2[k] = M2 * shape;
    }
    return st;
}

/// Advance the initial state to t_end, recording a snapshot every
/// `snapshot_stride` steps (the initial and final states are always
/// included). The step count is the smallest satisfying the CFL bound
/// and the whole run uses a uniform dt = t_end / nsteps, landing on
/// t_end exactly. Errors from `step` are rethrown with the failing time
/// attached; a relative mass drift above 1e-10 over the whole run is
/// reported as a numerical failure.
inline std::vector<SimState> run(const SimSetup& setup) {
    SimState st = initial_state(setup);
    const double dx = setup.grid.dx();
    const double mass0[2] = {st.mass(1, dx), st.mass(2, dx)};

    const double dt_max = cfl_dt(setup.params, setup.grid, setup.cfl);
    if (setup.t_end > 0.0 && setup.t_end / dt_max > 1e9)
        throw error(errc::invalid_parameter,
                    "t_end requires more than 1e9 steps at this resolution");
    long nsteps = setup.t_end > 0.0
                      ? static_cast<long>(std::ceil(setup.t_end / dt_max))
                      : 0;
    StepControl ctrl;
    ctrl.cfl = setup.cfl;
    // Uniform steps landing exactly on t_end; bump the count if division
    // rounded the step a hair above the CFL bound.
    ctrl.dt = nsteps > 0 ? setup.t_end / static_cast<double>(nsteps) : 0.0;
    if (nsteps > 0 && ctrl.dt > dt_max) {
        ++nsteps;
        ctrl.dt = setup.t_end / static_cast<double>(nsteps);
    }

    std::vector<SimState> snaps;
    snaps.push_back(st);
    for (long n = 0; n < nsteps; ++n) {
        try {
            st = step(st, setup.params, setup.grid, ctrl);
        } catch (const error& e) {
            throw error(e.code(),
                        e.message() + " at t = " + std::to_string(st.t) + " s");
        }
        if ((n + 1) % setup.snapshot_stride == 0 || n + 1 == nsteps) snaps.push_back(st);
    }
    for (int sp : {1, 2}) {
        if (mass0[sp - 1] <= 0.0) continue;
        const double drift = std::fabs(st.mass(sp, dx) - mass0[sp - 1]) / mass0[sp - 1];
        if (drift > 1e-10)
            throw error(errc::numerical_failure,
                        "mass drift " + std::to_string(drift) + " for species " +
                            std::to_string(sp));
    }
    return snaps;
}

} // namespace chemopulse

#endif
