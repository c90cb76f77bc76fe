#ifndef CHEMOPULSE_INTERVAL_HPP
#define CHEMOPULSE_INTERVAL_HPP

#include <algorithm>

namespace chemopulse {

/// Closed interval of wave speeds [lo, hi], with an explicit empty state.
struct Interval {
    double lo = 0.0;
    double hi = -1.0; // lo > hi encodes empty

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {}

    static Interval empty() { return Interval(); }

    bool is_empty() const { return lo > hi; }
    double width() const { return is_empty() ? 0.0 : hi - lo; }

    bool contains(double x) const { return !is_empty() && lo <= x && x <= hi; }
    bool contains_interior(double x) const { return !is_empty() && lo < x && x < hi; }

    Interval intersect(const Interval& other) const {
        if (is_empty() || other.is_empty()) return empty();
        Interval r(std::max(lo, other.lo), std::min(hi, other.hi));
        return r.is_empty() ? empty() : r;
    }
};

} // namespace chemopulse

#endif
