#ifndef CHEMOPULSE_KYMOGRAPH_HPP
#define CHEMOPULSE_KYMOGRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chemopulse/errors.hpp"
#include "chemopulse/scheme.hpp"

namespace chemopulse {

/// Space-time intensity image: one row per snapshot, one column per
/// cell, two channels normalized to [0, 1] by each species' global
/// maximum over the whole run (a vanished channel stays all zero).
struct Kymograph {
    int rows = 0;
    int cols = 0;
    std::vector<double> green; ///< species 1, row-major
    std::vector<double> red;   ///< species 2, row-major

    double g(int r, int c) const { return green[static_cast<std::size_t>(r) * cols + c]; }
    double r(int row, int c) const { return red[static_cast<std::size_t>(row) * cols + c]; }
};

inline Kymograph render_kymograph(std::span<const SimState> snaps) {
    if (snaps.empty())
        throw error(errc::insufficient_data, "kymograph needs at least one snapshot");
    Kymograph k;
    k.rows = static_cast<int>(snaps.size());
    k.cols = static_cast<int>(snaps.front().rho1.size());
    k.green.resize(static_cast<std::size_t>(k.rows) * k.cols);
    k.red.resize(k.green.size());
    double max1 = 0, max2 = 0;
    for (const SimState& st : snaps) {
        for (double v : st.rho1) max1 = std::max(max1, v);
        for (double v : st.rho2) max2 = std::max(max2, v);
    }
    std::size_t i = 0;
    for (const SimState& st : snaps)
        for (int c = 0; c < k.cols; ++c, ++i) {
            k.green[i] = max1 > 0 ? st.rho1[c] / max1 : 0.0;
            k.red[i] = max2 > 0 ? st.rho2[c] / max2 : 0.0;
        }
    return k;
}

/// Binary portable pixmap (P6), width = cell count, height = snapshot
/// count, channels (R, G, B) = (fast species, slow species, 0) scaled to
/// 0-255. Byte-stable for identical inputs.
inline std::string encode_ppm(const Kymograph& k) {
    std::string out = "P6\n" + std::to_string(k.cols) + " " + std::to_string(k.rows) +
                      "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(k.rows) * k.cols * 3);
    auto byte = [](double v) {
        return static_cast<char>(
            static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(v, 0.0, 1.0))));
    };
    for (std::size_t i = 0; i < k.green.size(); ++i) {
        out.push_back(byte(k.red[i]));
        out.push_back(byte(k.green[i]));
        out.push_back(static_cast<char>(0));
    }
    return out;
}

} // namespace chemopulse

#endif
