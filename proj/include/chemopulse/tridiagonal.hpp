#ifndef CHEMOPULSE_TRIDIAGONAL_HPP
#define CHEMOPULSE_TRIDIAGONAL_HPP

#include <cmath>
#include <span>
#include <vector>

#include "chemopulse/errors.hpp"

namespace chemopulse {

/// Solve a tridiagonal system by the forward-elimination / back-
/// substitution sweep. `sub[0]` and `sup[n-1]` are unused. The systems
/// assembled by the scheme are strictly diagonally dominant; dominance is
/// still checked row by row and its loss reported as a numerical failure.
///
/// `diag` and `rhs` are consumed as scratch; the solution lands in `rhs`.
inline void solve_tridiagonal(std::span<const double> sub, std::span<double> diag,
                              std::span<const double> sup, std::span<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double off = (i > 0 ? std::fabs(sub[i]) : 0.0) +
                           (i + 1 < n ? std::fabs(sup[i]) : 0.0);
        if (!(std::fabs(diag[i]) > off))
            throw error(errc::numerical_failure,
                        "tridiagonal system lost diagonal dominance");
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double m = sub[i] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

} // namespace chemopulse

#endif
