#ifndef CHEMOPULSE_ROOTS_HPP
#define CHEMOPULSE_ROOTS_HPP

#include <cmath>
#include <utility>

#include "chemopulse/errors.hpp"

namespace chemopulse {

/// Bisection on [lo, hi]; requires f(lo) and f(hi) of opposite (or zero)
/// sign. Runs until the bracket cannot be split further in double
/// precision or is narrower than tol, so the returned root is accurate to
/// max(tol, one ulp of the bracket).
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 0.0) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw error(errc::domain, "bisect: no sign change over bracket");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi || (hi - lo) <= tol) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section maximization of f on [lo, hi]. Returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double xtol) {
    constexpr double invphi = 0.6180339887498949; // 1/phi
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            if (c == a || c == d) break;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            if (d == b || d == c) break;
            fd = f(d);
        }
    }
    if (fc > fd) return {c, fc};
    return {d, fd};
}

} // namespace chemopulse

#endif
