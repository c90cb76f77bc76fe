#ifndef CHEMOPULSE_SCHEME_HPP
#define CHEMOPULSE_SCHEME_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "chemopulse/errors.hpp"
#include "chemopulse/grid.hpp"
#include "chemopulse/params.hpp"
#include "chemopulse/tridiagonal.hpp"

namespace chemopulse {

/// Fields of the two-species system at one time level.
struct SimState {
    double t = 0;
    std::vector<double> rho1;
    std::vector<double> rho2;
    std::vector<double> S;
    std::vector<double> N;

    const std::vector<double>& rho(int species) const {
        return species == 1 ? rho1 : rho2;
    }
    double mass(int species, double dx) const {
        double m = 0;
        for (double v : rho(species)) m += v;
        return m * dx;
    }
};

/// Time-step control. Only advection constrains dt; diffusion and the
/// reaction terms are treated implicitly.
struct StepControl {
    double dt = 0;    ///< time step [s]
    double cfl = 0.9; ///< safety factor in (0, 1]

    static constexpr double sgn_zero = 0.0; ///< value of sgn at a flat interface
};

/// Largest advection speed any cell can carry: max over species of
/// chiS + chiN.
inline double max_drift_speed(const PhysicalParams& p) {
    return std::max(p.chi1S + p.chi1N, p.chi2S + p.chi2N);
}

/// Admissible time step at the given safety factor.
inline double cfl_dt(const PhysicalParams& p, const Grid1D& grid, double cfl) {
    return cfl * grid.dx() / max_drift_speed(p);
}

inline double sgn(double v) {
    if (v > 0.0) return 1.0;
    if (v < 0.0) return -1.0;
    return StepControl::sgn_zero;
}

/// Drift speed chi * sgn(field[k+1] - field[k]) attached to the interior
/// interface k+1/2; k ranges over 0..nx-2.
inline double discrete_velocity(std::span<const double> field, int k, double chi,
                                double dx) {
    (void)dx; // the sign of the gradient does not depend on the spacing
    return chi * sgn(field[k + 1] - field[k]);
}

/// Upwind flux through interface k+1/2 for the interface-speed array `a`
/// (a[nx-1] must hold 0, the sealed-wall value). k = -1 and k = nx-1
/// address the boundary interfaces, which carry no flux.
inline double upwind_flux(std::span<const double> rho, std::span<const double> a, int k) {
    const int nx = static_cast<int>(rho.size());
    if (k < 0 || k >= nx - 1) return 0.0;
    return std::max(a[k], 0.0) * rho[k] - std::max(-a[k + 1], 0.0) * rho[k + 1];
}

namespace detail {

// Zero-flux implicit diffusion solve: (I - nu L) out = rhs, with L the
// Neumann Laplacian stencil. Column sums of L vanish, so the solve
// conserves the discrete mass exactly up to round-off. `extra_diag`, when
// non-null, adds a per-cell implicit reaction coefficient.
inline void implicit_diffusion(std::vector<double>& rhs, double nu,
                               const double* extra_diag, std::vector<double>& diag,
                               std::vector<double>& sub, std::vector<double>& sup) {
    const std::size_t n = rhs.size();
    diag.assign(n, 1.0 + 2.0 * nu);
    diag.front() = 1.0 + nu;
    diag.back() = 1.0 + nu;
    if (extra_diag)
        for (std::size_t k = 0; k < n; ++k) diag[k] += extra_diag[k];
    sub.assign(n, -nu);
    sup.assign(n, -nu);
    solve_tridiagonal(sub, diag, sup, rhs);
}

} // namespace detail

/// One step of the semi-implicit scheme, preserving the time indexing of
/// the update rules: densities advance first with velocities from S^n and
/// N^n and implicit diffusion; the nutrient then consumes against the old
/// densities rho^n; the chemoattractant is produced by the new densities
/// rho^{n+1}. All four linear systems are tridiagonal M-matrices, so
/// nonnegative fields stay nonnegative under the CFL bound.
inline SimState step(const SimState& state, const PhysicalParams& p, const Grid1D& grid,
                     const StepControl& ctrl) {
    const int nx = grid.nx;
    const double dx = grid.dx();
    if (static_cast<int>(state.rho1.size()) != nx ||
        static_cast<int>(state.rho2.size()) != nx ||
        static_cast<int>(state.S.size()) != nx || static_cast<int>(state.N.size()) != nx)
        throw error(errc::invalid_parameter, "state arrays do not match the grid");
    if (!(ctrl.cfl > 0.0 && ctrl.cfl <= 1.0))
        throw error(errc::step_rejected, "cfl must lie in (0, 1]");
    if (!(ctrl.dt > 0.0) || ctrl.dt > ctrl.cfl * dx / max_drift_speed(p))
        throw error(errc::step_rejected, "dt violates the advective CFL bound");

    SimState next;
    next.t = state.t + ctrl.dt;

    std::vector<double> a(nx), diag, sub, sup;

    for (int sp : {1, 2}) {
        for (int k = 0; k + 1 < nx; ++k)
            a[k] = discrete_velocity(state.S, k, p.chiS(sp), dx) +
                   discrete_velocity(state.N, k, p.chiN(sp), dx);
        a[nx - 1] = 0.0; // flat ghost gradient at the sealed wall

        const std::vector<double>& rho = state.rho(sp);
        std::vector<double> out(nx);
        double flux_left = 0.0; // interface -1/2
        for (int k = 0; k < nx; ++k) {
            const double flux_right = upwind_flux(rho, a, k);
            out[k] = rho[k] - ctrl.dt / dx * (flux_right - flux_left);
            flux_left = flux_right;
        }
        detail::implicit_diffusion(out, ctrl.dt * p.D(sp) / (dx * dx), nullptr, diag, sub,
                                   sup);
        (sp == 1 ? next.rho1 : next.rho2) = std::move(out);
    }

    // Nutrient: implicit decay against the pre-update densities.
    {
        std::vector<double> consumption(nx);
        for (int k = 0; k < nx; ++k)
            consumption[k] = ctrl.dt * (p.gamma1 * state.rho1[k] + p.gamma2 * state.rho2[k]);
        next.N = state.N;
        detail::implicit_diffusion(next.N, ctrl.dt * p.DN / (dx * dx), consumption.data(),
                                   diag, sub, sup);
    }

    // Chemoattractant: implicit decay, sourced by the updated densities.
    {
        std::vector<double> extra(nx, ctrl.dt * p.alpha);
        next.S = state.S;
        for (int k = 0; k < nx; ++k)
            next.S[k] += ctrl.dt * (next.rho1[k] + next.rho2[k]);
        detail::implicit_diffusion(next.S, ctrl.dt * p.DS / (dx * dx), extra.data(), diag,
                                   sub, sup);
    }

    return next;
}

} // namespace chemopulse

#endif
