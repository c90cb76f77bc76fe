#ifndef CHEMOPULSE_TRACKING_HPP
#define CHEMOPULSE_TRACKING_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "chemopulse/errors.hpp"
#include "chemopulse/grid.hpp"
#include "chemopulse/scheme.hpp"

namespace chemopulse {

struct TrackPoint {
    double t = 0;
    double x_peak = 0;
    double peak_height = 0;
};

/// Time series of one species' pulse position, plus the straight-line
/// fit produced by fit_speed.
struct TrackRecord {
    int species = 0;
    std::vector<TrackPoint> points;

    bool fitted = false;
    double speed = 0;        ///< least-squares slope [cm/s]
    double residual_rms = 0; ///< RMS of the fit residuals [cm]
    double fit_t0 = 0;       ///< fit window [s]
    double fit_t1 = 0;
};

/// Peak cell index (leftmost on ties) refined by a 3-point parabola.
/// Returns (position, height); at a boundary cell or a flat triple the
/// refinement degenerates to the cell center.
inline TrackPoint refined_peak(std::span<const double> f, const Grid1D& grid, double t) {
    const int nx = static_cast<int>(f.size());
    const int k = static_cast<int>(std::max_element(f.begin(), f.end()) - f.begin());
    TrackPoint pt;
    pt.t = t;
    pt.x_peak = grid.x(k);
    pt.peak_height = f[k];
    if (k > 0 && k + 1 < nx) {
        const double den = f[k - 1] - 2.0 * f[k] + f[k + 1];
        if (den != 0.0) {
            double delta = 0.5 * (f[k - 1] - f[k + 1]) / den;
            delta = std::clamp(delta, -0.5, 0.5);
            pt.x_peak = grid.x(k) + delta * grid.dx();
            pt.peak_height = f[k] - 0.25 * (f[k - 1] - f[k + 1]) * delta;
        }
    }
    return pt;
}

/// Track one species' peak across a snapshot sequence.
inline TrackRecord track_peaks(std::span<const SimState> snaps, const Grid1D& grid,
                               int species) {
    if (snaps.size() < 2)
        throw error(errc::insufficient_data, "need at least 2 snapshots to track");
    TrackRecord rec;
    rec.species = species;
    rec.points.reserve(snaps.size());
    for (const SimState& st : snaps) {
        const std::vector<double>& f = st.rho(species);
        if (*std::max_element(f.begin(), f.end()) <= 0.0)
            throw error(errc::no_peak, "species " + std::to_string(species) +
                                           " has no positive density at t = " +
                                           std::to_string(st.t));
        rec.points.push_back(refined_peak(f, grid, st.t));
    }
    return rec;
}

/// Least-squares speed over the track, after discarding the leading
/// `discard_fraction` of the time range as transient. Needs at least 5
/// retained points. Fills the fit fields of the record and returns the
/// slope.
inline double fit_speed(TrackRecord& rec, double discard_fraction = 0.3) {
    if (!(discard_fraction >= 0.0 && discard_fraction < 1.0))
        throw error(errc::invalid_parameter, "discard_fraction must lie in [0, 1)");
    if (rec.points.empty())
        throw error(errc::insufficient_data, "empty track");
    const double t_first = rec.points.front().t;
    const double t_last = rec.points.back().t;
    const double t0 = t_first + discard_fraction * (t_last - t_first);

    std::vector<const TrackPoint*> kept;
    for (const TrackPoint& p : rec.points)
        if (p.t >= t0) kept.push_back(&p);
    if (kept.size() < 5)
        throw error(errc::insufficient_data,
                    "fewer than 5 track points after transient discard");

    double tm = 0, xm = 0;
    for (auto* p : kept) {
        tm += p->t;
        xm += p->x_peak;
    }
    tm /= kept.size();
    xm /= kept.size();
    double stt = 0, stx = 0;
    for (auto* p : kept) {
        stt += (p->t - tm) * (p->t - tm);
        stx += (p->t - tm) * (p->x_peak - xm);
    }
    if (stt == 0.0)
        throw error(errc::insufficient_data, "track points share a single time");
    const double slope = stx / stt;
    double ss = 0;
    for (auto* p : kept) {
        const double r = p->x_peak - (xm + slope * (p->t - tm));
        ss += r * r;
    }
    rec.fitted = true;
    rec.speed = slope;
    rec.residual_rms = std::sqrt(ss / kept.size());
    rec.fit_t0 = kept.front()->t;
    rec.fit_t1 = kept.back()->t;
    return slope;
}

enum class Regime { single, split, indeterminate };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::single: return "single";
        case Regime::split: return "split";
        case Regime::indeterminate: return "indeterminate";
    }
    return "?";
}

struct RegimeThresholds {
    double pulse_width = 0;       ///< analytic width 1/lambda1- + 1/|lambda1+| [cm]
    double split_widths = 5.0;    ///< separation for "split", in pulse widths
    double single_widths = 2.0;   ///< ceiling for "single", in pulse widths
    double monotone_slack = 0.0;  ///< tolerated dip in the separation series [cm]
};

/// Classify a pair of tracks over the last third of the run: split when
/// the peak separation keeps growing and ends beyond split_widths pulse
/// widths, single when it never leaves single_widths, indeterminate
/// otherwise.
inline Regime classify_regime(const TrackRecord& a, const TrackRecord& b,
                              const RegimeThresholds& th) {
    if (a.points.size() != b.points.size() || a.points.size() < 3)
        throw error(errc::insufficient_data, "tracks do not pair up");
    const std::size_t n = a.points.size();
    std::vector<double> sep(n);
    for (std::size_t i = 0; i < n; ++i)
        sep[i] = std::fabs(b.points[i].x_peak - a.points[i].x_peak);

    const std::size_t i0 = n - std::max<std::size_t>(2, n / 3);
    bool growing = true;
    double sep_max = 0.0;
    for (std::size_t i = i0; i < n; ++i) {
        sep_max = std::max(sep_max, sep[i]);
        if (i > i0 && sep[i] + th.monotone_slack < sep[i - 1]) growing = false;
    }
    if (growing && sep.back() >= th.split_widths * th.pulse_width) return Regime::split;
    if (sep_max <= th.single_widths * th.pulse_width) return Regime::single;
    return Regime::indeterminate;
}

} // namespace chemopulse

#endif
