#ifndef CHEMOPULSE_PROFILES_HPP
#define CHEMOPULSE_PROFILES_HPP

#include <cmath>
#include <span>
#include <vector>

#include "chemopulse/dispersion.hpp"
#include "chemopulse/errors.hpp"
#include "chemopulse/params.hpp"

namespace chemopulse {

/// A solved traveling pulse: speed, flank rates, peak amplitudes and
/// masses of both subpopulations. A species with zero mass has its
/// amplitude and rates set to zero.
struct WaveSolution {
    double sigma = 0;           ///< wave speed [cm/s]
    double lambda_minus_1 = 0;  ///< back-flank rate, species 1 [1/cm]
    double lambda_plus_1 = 0;   ///< front-flank rate, species 1 [1/cm]
    double lambda_minus_2 = 0;
    double lambda_plus_2 = 0;
    double rhoM_1 = 0;          ///< peak amplitude, species 1
    double rhoM_2 = 0;
    double M1 = 0;              ///< mass of species 1 [density * cm]
    double M2 = 0;
    double phi_red = 0;         ///< M2 / (M1 + M2)

    double lambda_minus(int species) const {
        return species == 1 ? lambda_minus_1 : lambda_minus_2;
    }
    double lambda_plus(int species) const {
        return species == 1 ? lambda_plus_1 : lambda_plus_2;
    }
    double rhoM(int species) const { return species == 1 ? rhoM_1 : rhoM_2; }
    double mass(int species) const { return species == 1 ? M1 : M2; }
    bool has_species(int species) const { return mass(species) > 0.0; }
};

/// Peak amplitude from the pulse mass. Integrating the two exponential
/// flanks gives M = rhoM (1/lambda_minus + 1/|lambda_plus|), which in
/// terms of the drifts reads M = rhoM * 2 chiS D / (chiS^2 -
/// (sigma - chiN)^2). Only the amplitude ratio enters the dispersion
/// relation, so the speed analysis is insensitive to this normalization.
inline double amplitude_from_mass(const PhysicalParams& p, double sigma, int species,
                                  double mass) {
    const double cS = p.chiS(species);
    const double cN = p.chiN(species);
    const double A = cS * cS - (sigma - cN) * (sigma - cN);
    return mass * A / (2.0 * cS * p.D(species));
}

/// Assemble the traveling pulse at fast-population fraction phi_red with
/// total mass M_total. phi_red = 0 and 1 reduce to the pure-species
/// pulses at sigma1 and sigma2; in between the speed solves the
/// two-species dispersion relation (smallest root). Species labels are
/// normalized so that species 1 is the slow one.
inline WaveSolution solve_wave(const PhysicalParams& p, double phi_red,
                               double M_total = 1.0) {
    if (!std::isfinite(phi_red) || phi_red < 0.0 || phi_red > 1.0)
        throw error(errc::invalid_parameter, "phi_red must lie in [0, 1]");
    if (!std::isfinite(M_total) || M_total <= 0.0)
        throw error(errc::invalid_parameter, "M_total must be > 0");

    WaveSolution w;
    w.phi_red = phi_red;
    w.M1 = (1.0 - phi_red) * M_total;
    w.M2 = phi_red * M_total;

    const BifurcationData bif = admissible_set(p);
    const PhysicalParams q = bif.species_swapped ? detail::swap_species(p) : p;
    if (phi_red == 0.0) {
        w.sigma = bif.sigma1; // pure pulses exist regardless of the hypothesis
    } else if (phi_red == 1.0) {
        w.sigma = bif.sigma2;
    } else {
        TwoSpeciesSpeed sol = sigma_two(q, phi_red);
        if (!sol.sigma)
            throw error(errc::bifurcation_undefined,
                        "no single-speed traveling pulse: phi_red exceeds phi*");
        w.sigma = *sol.sigma;
    }
    for (int sp : {1, 2}) {
        if (!w.has_species(sp)) continue;
        auto [lm, lp] = lambda_pm(q, w.sigma, sp);
        if (sp == 1) {
            w.lambda_minus_1 = lm;
            w.lambda_plus_1 = lp;
            w.rhoM_1 = amplitude_from_mass(q, w.sigma, 1, w.M1);
        } else {
            w.lambda_minus_2 = lm;
            w.lambda_plus_2 = lp;
            w.rhoM_2 = amplitude_from_mass(q, w.sigma, 2, w.M2);
        }
    }
    return w;
}

/// Chemoattractant kernel K(z) = exp(-sigma z / 2DS - sqrt(sigma^2 +
/// 4 alpha DS) |z| / 2DS); K(0) = 1 and K > 0 everywhere.
inline double kernel_K(const PhysicalParams& p, double sigma, double z) {
    const double sq = kernel_root(sigma, p.alpha, p.DS);
    return std::exp(-(sigma * z + sq * std::fabs(z)) / (2.0 * p.DS));
}

/// Pulse density of one species at position z in the wave frame.
inline double rho_profile(const WaveSolution& w, int species, double z) {
    if (!w.has_species(species)) return 0.0;
    const double rate = z < 0.0 ? w.lambda_minus(species) : w.lambda_plus(species);
    return w.rhoM(species) * std::exp(rate * z);
}

namespace detail {

// expm1(u)/u, continuous through u = 0.
inline double expm1_over(double u) {
    if (u == 0.0) return 1.0;
    return std::expm1(u) / u;
}

// (exp(a z) - exp(b z)) / (a - b), stable through a = b: switches to an
// expm1 form when the exponents nearly cancel, to a direct difference
// otherwise (which also avoids overflowing the factored expression).
inline double exp_diff_quotient(double a, double b, double z) {
    const double u = (a - b) * z;
    if (std::fabs(u) < 1e-4) return std::exp(b * z) * z * expm1_over(u);
    return (std::exp(a * z) - std::exp(b * z)) / (a - b);
}

// Closed-form convolution of K with one unit-amplitude piecewise
// exponential pulse (rates lm > 0 > lp), evaluated at z. The kernel
// decays at rate pr to the right and qr to the left of the origin.
inline double S_unit(double pr, double qr, double lm, double lp, double z) {
    if (z >= 0.0) {
        return std::exp(-pr * z) / (pr + lm) + exp_diff_quotient(lp, -pr, z) +
               std::exp(lp * z) / (qr - lp);
    }
    return std::exp(lm * z) / (pr + lm) - exp_diff_quotient(qr, lm, z) +
           std::exp(qr * z) / (qr - lp);
}

} // namespace detail

/// Chemoattractant profile S(z): the kernel convolved with both pulses,
/// integrated exactly piece by piece (no quadrature).
inline double S_profile(const PhysicalParams& p, const WaveSolution& w, double z) {
    const double sq = kernel_root(w.sigma, p.alpha, p.DS);
    const double pr = (w.sigma + sq) / (2.0 * p.DS);
    const double qr = (sq - w.sigma) / (2.0 * p.DS);
    double S = 0.0;
    for (int sp : {1, 2})
        if (w.has_species(sp))
            S += w.rhoM(sp) *
                 detail::S_unit(pr, qr, w.lambda_minus(sp), w.lambda_plus(sp), z);
    return S;
}

struct Profiles {
    std::vector<double> rho1;
    std::vector<double> rho2;
    std::vector<double> S;
};

/// Sample rho1, rho2 and S on a grid of wave-frame positions.
inline Profiles analytic_profiles(const PhysicalParams& p, const WaveSolution& w,
                                  std::span<const double> z_grid) {
    Profiles out;
    out.rho1.reserve(z_grid.size());
    out.rho2.reserve(z_grid.size());
    out.S.reserve(z_grid.size());
    for (double z : z_grid) {
        out.rho1.push_back(rho_profile(w, 1, z));
        out.rho2.push_back(rho_profile(w, 2, z));
        out.S.push_back(S_profile(p, w, z));
    }
    return out;
}

struct SPrimeParts {
    double s_minus = 0; ///< contribution of the back half-line integral
    double s_plus = 0;  ///< contribution of the front half-line integral
    double total = 0;   ///< S'(0) = s_minus + s_plus
};

/// S'(0) from the closed forms of the two half-line integrals. Vanishes
/// (to round-off) exactly when sigma solves the dispersion relation for
/// the solution's mass fractions.
inline SPrimeParts sprime_parts(const PhysicalParams& p, const WaveSolution& w) {
    const double sq = kernel_root(w.sigma, p.alpha, p.DS);
    SPrimeParts out;
    for (int sp : {1, 2}) {
        if (!w.has_species(sp)) continue;
        out.s_minus += w.rhoM(sp) * (-w.sigma + sq) /
                       (-w.sigma + sq - 2.0 * p.DS * w.lambda_plus(sp));
        out.s_plus += w.rhoM(sp) * (w.sigma + sq) /
                      (-w.sigma - sq - 2.0 * p.DS * w.lambda_minus(sp));
    }
    out.total = out.s_minus + out.s_plus;
    return out;
}

inline double sprime_at_zero(const PhysicalParams& p, const WaveSolution& w) {
    return sprime_parts(p, w).total;
}

} // namespace chemopulse

#endif
