#ifndef CHEMOPULSE_FITTING_HPP
#define CHEMOPULSE_FITTING_HPP

#include <cmath>

#include "chemopulse/errors.hpp"

namespace chemopulse {

struct FittedParams {
    double chiS = 0;
    double chiN = 0;
    double alpha = 0;
};

/// Invert the flank rates and speed of a measured pulse into the drift
/// magnitudes and the chemoattractant degradation rate:
///   chiS  = D (lambda_minus - lambda_plus) / 2
///   chiN  = sigma + D (lambda_plus + lambda_minus) / 2
///   alpha = sigma^2 (-lambda_plus lambda_minus) / (DS (lambda_plus + lambda_minus)^2)
/// These are the exact algebraic inverses of the flank-rate formulas
/// combined with the one-species speed equation, so the round trip
/// through lambda_pm and sigma_single reproduces the inputs.
inline FittedParams fit_parameters(double lambda_minus, double lambda_plus, double sigma,
                                   double D, double DS) {
    auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!finite_pos(sigma) || !finite_pos(D) || !finite_pos(DS))
        throw error(errc::invalid_parameter, "sigma, D and DS must be finite and > 0");
    if (!std::isfinite(lambda_minus) || !std::isfinite(lambda_plus) ||
        lambda_minus <= 0.0 || lambda_plus >= 0.0)
        throw error(errc::invalid_profile,
                    "flank rates must satisfy lambda_minus > 0 > lambda_plus");
    const double sum = lambda_plus + lambda_minus;
    if (sum == 0.0)
        throw error(errc::singular_fit,
                    "symmetric pulse (lambda_minus = -lambda_plus): alpha is undetermined");
    FittedParams out;
    out.chiS = D * (lambda_minus - lambda_plus) / 2.0;
    out.chiN = sigma + D * sum / 2.0;
    out.alpha = sigma * sigma * (-lambda_plus * lambda_minus) / (DS * sum * sum);
    return out;
}

} // namespace chemopulse

#endif
