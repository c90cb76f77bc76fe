#ifndef CHEMOPULSE_DISPERSION_HPP
#define CHEMOPULSE_DISPERSION_HPP

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chemopulse/errors.hpp"
#include "chemopulse/interval.hpp"
#include "chemopulse/params.hpp"
#include "chemopulse/roots.hpp"

namespace chemopulse {

/// sqrt(sigma^2 + 4 alpha D_S), the decay scale of the chemoattractant
/// kernel. Appears in every dispersion expression below.
inline double kernel_root(double sigma, double alpha, double DS) {
    return std::sqrt(sigma * sigma + 4.0 * alpha * DS);
}

/// Residual of the one-species speed equation,
///   f(sigma) = chiN - sigma - chiS * sigma / sqrt(sigma^2 + 4 DS alpha),
/// strictly decreasing in sigma for positive arguments.
inline double sigma_single_residual(double chiS, double chiN, double DS, double alpha,
                                    double sigma) {
    return chiN - sigma - chiS * sigma / kernel_root(sigma, alpha, DS);
}

/// Unique speed of the one-species traveling pulse. The root is bracketed
/// by (max(0, chiN - chiS), chiN) and resolved by bisection down to one
/// ulp, which leaves the residual far below 1e-12 * chiN.
inline double sigma_single(double chiS, double chiN, double DS, double alpha) {
    auto bad = [](double v) { return !std::isfinite(v) || v <= 0.0; };
    if (bad(chiN) || bad(DS) || bad(alpha) || !std::isfinite(chiS) || chiS < 0.0)
        throw error(errc::invalid_parameter,
                    "sigma_single requires chiN, DS, alpha > 0 and chiS >= 0");
    if (chiS == 0.0) return chiN;
    const double lo = std::max(0.0, chiN - chiS);
    return bisect([&](double s) { return sigma_single_residual(chiS, chiN, DS, alpha, s); },
                  lo, chiN);
}

/// Admissible speed interval I_i = [chiN - chiS, chiN + chiS] of species i.
inline Interval species_interval(const PhysicalParams& p, int species) {
    return Interval(p.chiN(species) - p.chiS(species), p.chiN(species) + p.chiS(species));
}

/// Exponential rates (lambda_minus, lambda_plus) of the pulse flanks of
/// one species at speed sigma. Requires sigma in the interior of the
/// species' admissible interval, so that lambda_minus > 0 > lambda_plus.
inline std::pair<double, double> lambda_pm(const PhysicalParams& p, double sigma,
                                           int species) {
    const Interval I = species_interval(p, species);
    if (!I.contains_interior(sigma))
        throw error(errc::admissibility,
                    "sigma outside the open interval (chiN - chiS, chiN + chiS) of species " +
                        std::to_string(species));
    const double lm = (p.chiN(species) + p.chiS(species) - sigma) / p.D(species);
    const double lp = (p.chiN(species) - p.chiS(species) - sigma) / p.D(species);
    return {lm, lp};
}

namespace detail {

// g_i(sigma) = (sigma - chiN) + chiS * sigma / sqrt(sigma^2 + 4 alpha DS);
// increasing on I_i, with g_i(sigma_i) = 0.
inline double g_eval(const PhysicalParams& p, double sigma, int species) {
    return (sigma - p.chiN(species)) +
           p.chiS(species) * sigma / kernel_root(sigma, p.alpha, p.DS);
}

// Polynomial form of h_i.
inline double h_eval(const PhysicalParams& p, double sigma, int species) {
    const double r = p.DS / p.D(species);
    const double cN = p.chiN(species);
    const double cS = p.chiS(species);
    return sigma * sigma * (r - 1.0) + (1.0 - 2.0 * r) * sigma * cN -
           cS * kernel_root(sigma, p.alpha, p.DS) + r * (cN * cN - cS * cS) -
           p.alpha * p.D(species);
}

// Factored form of h_i (product of the two kernel/flank denominators);
// equals 4 (DS/D_i) times the polynomial form.
inline double h_factored_eval(const PhysicalParams& p, double sigma, int species) {
    const double sq = kernel_root(sigma, p.alpha, p.DS);
    const double lm = (p.chiN(species) + p.chiS(species) - sigma) / p.D(species);
    const double lp = (p.chiN(species) - p.chiS(species) - sigma) / p.D(species);
    return (-sigma - sq - 2.0 * p.DS * lm) * (-sigma + sq - 2.0 * p.DS * lp);
}

// G(sigma) = -(chi2S D2 / chi1S D1) (g1/g2) (h2/h1) (A1/A2) with
// A_i = chiS_i^2 - (chiN_i - sigma)^2. Positive on the interior of the
// admissible set, zero at both ends.
inline double G_eval(const PhysicalParams& p, double sigma) {
    const double g1 = g_eval(p, sigma, 1);
    const double g2 = g_eval(p, sigma, 2);
    const double h1 = h_eval(p, sigma, 1);
    const double h2 = h_eval(p, sigma, 2);
    const double A1 = p.chi1S * p.chi1S - (p.chi1N - sigma) * (p.chi1N - sigma);
    const double A2 = p.chi2S * p.chi2S - (p.chi2N - sigma) * (p.chi2N - sigma);
    return -(p.chi2S * p.D2) / (p.chi1S * p.D1) * (g1 / g2) * (h2 / h1) * (A1 / A2);
}

// H(sigma) of the two-species dispersion relation, so that the relation
// reads g1 + phi/(1-phi) * H * g2 = 0.
inline double H_eval(const PhysicalParams& p, double sigma) {
    const double A1 = p.chi1S * p.chi1S - (p.chi1N - sigma) * (p.chi1N - sigma);
    const double A2 = p.chi2S * p.chi2S - (p.chi2N - sigma) * (p.chi2N - sigma);
    return (p.chi1S * p.D1) / (p.chi2S * p.D2) * (A2 / A1) *
           (h_eval(p, sigma, 1) / h_eval(p, sigma, 2));
}

inline PhysicalParams swap_species(const PhysicalParams& p) {
    PhysicalParams q = p;
    std::swap(q.D1, q.D2);
    std::swap(q.chi1S, q.chi2S);
    std::swap(q.chi1N, q.chi2N);
    std::swap(q.gamma1, q.gamma2);
    return q;
}

} // namespace detail

/// Everything the bifurcation analysis produces for one parameter set.
/// When `species_swapped` is set, the inputs were relabeled internally so
/// that sigma1 < sigma2, and all fields refer to the relabeled order.
struct BifurcationData {
    double sigma1 = 0;          ///< slow pure-species speed [cm/s]
    double sigma2 = 0;          ///< fast pure-species speed [cm/s]
    Interval cap;               ///< I_1 intersect I_2
    Interval omega;             ///< admissible set (sigma1, sigma2) ∩ (I_1 ∩ I_2)
    bool hypothesis_holds = false;
    bool species_swapped = false;
    std::string failed_clause;  ///< clause that broke the hypothesis, if any

    // Filled by phi_star():
    double lambda_star = 0;      ///< max of G over closure of omega
    double lambda_star_grid = 0; ///< same max before golden-section refinement
    double sigma_star = 0;       ///< argmax of G
    double phi_star = 0;         ///< lambda_star / (1 + lambda_star)
};

/// Pure-species speeds, admissible set and the hypothesis check. Inputs
/// may label the species either way round; the result is normalized so
/// sigma1 <= sigma2.
inline BifurcationData admissible_set(PhysicalParams p) {
    p.validate();
    BifurcationData out;
    double s1 = sigma_single(p.chi1S, p.chi1N, p.DS, p.alpha);
    double s2 = sigma_single(p.chi2S, p.chi2N, p.DS, p.alpha);
    if (s1 > s2) {
        std::swap(s1, s2);
        p = detail::swap_species(p);
        out.species_swapped = true;
    }
    out.sigma1 = s1;
    out.sigma2 = s2;
    out.cap = species_interval(p, 1).intersect(species_interval(p, 2));
    out.omega = out.cap.intersect(Interval(s1, s2));
    if (out.cap.is_empty()) {
        out.failed_clause = "I_1 and I_2 do not intersect";
    } else if (out.cap.contains(s2)) {
        out.failed_clause = "sigma2 lies in I_1 intersect I_2";
    } else if (out.cap.contains(p.chi2N - p.chi2S)) {
        out.failed_clause = "chi2N - chi2S lies in I_1 intersect I_2";
    } else if (out.omega.is_empty() || out.omega.width() <= 0.0) {
        out.failed_clause = "admissible set is empty";
    } else {
        out.hypothesis_holds = true;
    }
    return out;
}

/// G evaluated with a domain check against a precomputed analysis.
inline double G_func(const PhysicalParams& p, double sigma, const BifurcationData& bif) {
    if (!bif.hypothesis_holds)
        throw error(errc::bifurcation_undefined, bif.failed_clause);
    if (!(bif.omega.lo <= sigma && sigma <= bif.omega.hi))
        throw error(errc::domain, "sigma outside the closure of the admissible set");
    const PhysicalParams q = bif.species_swapped ? detail::swap_species(p) : p;
    return detail::G_eval(q, sigma);
}

inline double G_func(const PhysicalParams& p, double sigma) {
    return G_func(p, sigma, admissible_set(p));
}

/// g_i(sigma), the increasing map whose root on I_i is the pure-species
/// speed sigma_i.
inline double g_func(const PhysicalParams& p, double sigma, int species) {
    return detail::g_eval(p, sigma, species);
}

/// H(sigma) of the two-species dispersion relation; defined wherever g's
/// and h's denominators stay away from zero (in particular on the
/// interior of the admissible set).
inline double H_func(const PhysicalParams& p, double sigma) {
    return detail::H_eval(p, sigma);
}

/// h_i in the polynomial form, cross-checked against the factored form;
/// the two must agree to 1e-10 relative (they are algebraically equal up
/// to the factor 4 DS / D_i).
inline double h_func(const PhysicalParams& p, double sigma, int species) {
    const Interval I = species_interval(p, species);
    if (!I.contains_interior(sigma))
        throw error(errc::admissibility,
                    "h is defined for sigma inside the admissible interval of species " +
                        std::to_string(species));
    const double poly = detail::h_eval(p, sigma, species);
    const double fact = detail::h_factored_eval(p, sigma, species) /
                        (4.0 * p.DS / p.D(species));
    const double scale = std::max(std::fabs(poly), std::fabs(fact));
    if (std::fabs(poly - fact) > 1e-10 * scale)
        throw error(errc::numerical_failure, "h polynomial/factored forms disagree");
    return poly;
}

/// Coefficient c_i of the S'(0) decomposition (closed form).
inline double c_coefficient(const PhysicalParams& p, double sigma, int species) {
    const double sq = kernel_root(sigma, p.alpha, p.DS);
    return 4.0 * (p.DS / p.D(species)) *
           (p.chiS(species) * sigma + (sigma - p.chiN(species)) * sq);
}

namespace detail {

constexpr int kGridScanPoints = 100000;

// Position of scan sample i of n on the interior of omega:
// lo + (i+1) * width / (n+1).
inline double omega_sample(const Interval& om, int i, int n) {
    return om.lo + (om.hi - om.lo) * static_cast<double>(i + 1) / (n + 1);
}

} // namespace detail

/// Full bifurcation analysis: locates the maximum lambda* of G over the
/// admissible set by a dense grid scan plus golden-section refinement,
/// and the critical fraction phi* = lambda* / (1 + lambda*).
inline BifurcationData phi_star(const PhysicalParams& p) {
    BifurcationData bif = admissible_set(p);
    if (!bif.hypothesis_holds)
        throw error(errc::bifurcation_undefined, bif.failed_clause);
    const PhysicalParams q = bif.species_swapped ? detail::swap_species(p) : p;
    const int n = detail::kGridScanPoints;
    int best = 0;
    double best_val = -1.0;
    for (int i = 0; i < n; ++i) {
        const double v = detail::G_eval(q, detail::omega_sample(bif.omega, i, n));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    bif.lambda_star_grid = best_val;
    const double lo = detail::omega_sample(bif.omega, std::max(0, best - 1), n);
    const double hi = detail::omega_sample(bif.omega, std::min(n - 1, best + 1), n);
    auto [sig, val] = golden_max([&](double s) { return detail::G_eval(q, s); }, lo, hi,
                                 1e-6 * (hi - lo));
    bif.sigma_star = sig;
    bif.lambda_star = std::max(val, best_val);
    bif.phi_star = bif.lambda_star / (1.0 + bif.lambda_star);
    return bif;
}

/// Outcome of solving the two-species dispersion relation at a given
/// fast-population fraction.
struct TwoSpeciesSpeed {
    std::optional<double> sigma;   ///< smallest root, or no-solution when phi > phi*
    std::vector<double> all_roots; ///< every bracketed root, ascending
    BifurcationData bif;           ///< analysis context, including phi*
};

/// Solve G(sigma) = phi / (1 - phi) over the admissible set. For
/// phi = 0 this reduces exactly to the one-species speed of the slow
/// subpopulation. For phi > phi* there is no single-speed pulse and the
/// optional is empty. When several roots exist the smallest one (the
/// continuation of sigma(0) = sigma1) is reported; all of them are kept
/// in `all_roots`.
inline TwoSpeciesSpeed sigma_two(const PhysicalParams& p, double phi_red) {
    if (!std::isfinite(phi_red) || phi_red < 0.0 || phi_red >= 1.0)
        throw error(errc::invalid_parameter, "phi_red must lie in [0, 1)");
    TwoSpeciesSpeed out;
    out.bif = phi_star(p);
    const PhysicalParams q = out.bif.species_swapped ? detail::swap_species(p) : p;
    if (phi_red == 0.0) {
        out.sigma = sigma_single(q.chi1S, q.chi1N, q.DS, q.alpha);
        out.all_roots.push_back(*out.sigma);
        return out;
    }
    const double target = phi_red / (1.0 - phi_red);
    // The strict comparison is padded by a few ulps so that phi == phi*
    // (whose target equals lambda* only up to round-off) still solves.
    if (target > out.bif.lambda_star * (1.0 + 1e-12)) return out; // no single-speed pulse

    auto f = [&](double s) { return detail::G_eval(q, s) - target; };
    const int n = detail::kGridScanPoints;
    double prev_s = out.bif.omega.lo;
    double prev_f = -target; // G(sigma1) = 0
    for (int i = 0; i <= n; ++i) {
        const double s = i < n ? detail::omega_sample(out.bif.omega, i, n) : out.bif.omega.hi;
        const double v = i < n ? f(s) : -target; // G vanishes at the upper end too
        if ((prev_f <= 0.0 && v > 0.0) || (prev_f > 0.0 && v <= 0.0))
            out.all_roots.push_back(bisect(f, prev_s, s));
        prev_s = s;
        prev_f = v;
    }
    if (out.all_roots.empty()) {
        // phi at (or within refinement error of) phi*: the graph of G only
        // grazes the target level, below grid resolution.
        if (std::fabs(detail::G_eval(q, out.bif.sigma_star) - target) <=
            1e-10 * (1.0 + target))
            out.all_roots.push_back(out.bif.sigma_star);
        else
            throw error(errc::numerical_failure,
                        "no root bracketed although phi <= phi*");
    }
    out.sigma = out.all_roots.front();
    return out;
}

} // namespace chemopulse

#endif
