#ifndef CHEMOPULSE_GRID_HPP
#define CHEMOPULSE_GRID_HPP

#include <cmath>

#include "chemopulse/errors.hpp"

namespace chemopulse {

/// Uniform cell-centered grid on a closed channel [0, L].
struct Grid1D {
    double L = 0;  ///< channel length [cm]
    int nx = 0;    ///< cell count

    Grid1D() = default;
    Grid1D(double length, int cells) : L(length), nx(cells) {
        if (!std::isfinite(L) || L <= 0.0)
            throw error(errc::invalid_parameter, "grid length must be > 0");
        if (nx < 8) throw error(errc::invalid_parameter, "grid needs at least 8 cells");
    }

    double dx() const { return L / nx; }
    double x(int k) const { return (k + 0.5) * dx(); }
};

} // namespace chemopulse

#endif
