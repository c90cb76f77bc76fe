#ifndef CHEMOPULSE_PARAMS_HPP
#define CHEMOPULSE_PARAMS_HPP

#include <cmath>
#include <string>

#include "chemopulse/errors.hpp"

namespace chemopulse {

/// Model constants for the two-species system, in raw CGS units (cm, s).
///
/// Species 1 is the slow subpopulation (green), species 2 the fast one
/// (red). `validate()` enforces positivity; the chemoattractant
/// sensitivities chi_i^S may be zero (a chemotactically blind species),
/// everything else must be strictly positive.
struct PhysicalParams {
    double D1 = 0;     ///< bacterial diffusivity, species 1 [cm^2/s]
    double D2 = 0;     ///< bacterial diffusivity, species 2 [cm^2/s]
    double DS = 0;     ///< chemoattractant diffusivity [cm^2/s]
    double DN = 0;     ///< nutrient diffusivity [cm^2/s]
    double alpha = 0;  ///< chemoattractant degradation rate [1/s]
    double gamma1 = 0; ///< nutrient consumption rate, species 1 [1/(density s)]
    double gamma2 = 0; ///< nutrient consumption rate, species 2 [1/(density s)]
    double chi1S = 0;  ///< chemoattractant drift magnitude, species 1 [cm/s]
    double chi2S = 0;  ///< chemoattractant drift magnitude, species 2 [cm/s]
    double chi1N = 0;  ///< nutrient drift magnitude, species 1 [cm/s]
    double chi2N = 0;  ///< nutrient drift magnitude, species 2 [cm/s]

    double D(int species) const { return species == 1 ? D1 : D2; }
    double chiS(int species) const { return species == 1 ? chi1S : chi2S; }
    double chiN(int species) const { return species == 1 ? chi1N : chi2N; }
    double gamma(int species) const { return species == 1 ? gamma1 : gamma2; }

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!std::isfinite(v) || v <= 0.0)
                throw error(errc::invalid_parameter,
                            std::string(name) + " must be finite and > 0");
        };
        auto nonnegative = [](double v, const char* name) {
            if (!std::isfinite(v) || v < 0.0)
                throw error(errc::invalid_parameter,
                            std::string(name) + " must be finite and >= 0");
        };
        positive(D1, "D1");
        positive(D2, "D2");
        positive(DS, "DS");
        positive(DN, "DN");
        positive(alpha, "alpha");
        positive(gamma1, "gamma1");
        positive(gamma2, "gamma2");
        nonnegative(chi1S, "chi1S");
        nonnegative(chi2S, "chi2S");
        positive(chi1N, "chi1N");
        positive(chi2N, "chi2N");
    }
};

/// Measured E. coli parameter set used throughout as the default
/// configuration. The consumption rates are not measured; the default
/// makes the nutrient under the mean density (total mass 1 on a 1.8 cm
/// channel) deplete on a ~100 s scale.
inline PhysicalParams default_params() {
    PhysicalParams p;
    p.D1 = 1.79e-6;
    p.D2 = 3.29e-6;
    p.DS = 8e-6;
    p.DN = 8e-6;
    p.alpha = 5e-2;
    p.gamma1 = 1.8e-2;
    p.gamma2 = 1.8e-2;
    p.chi1S = 6.49e-5;
    p.chi2S = 2.88e-4;
    p.chi1N = 2.57e-4;
    p.chi2N = 4.74e-4;
    return p;
}

} // namespace chemopulse

#endif
