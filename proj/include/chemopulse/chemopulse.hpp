#ifndef CHEMOPULSE_CHEMOPULSE_HPP
#define CHEMOPULSE_CHEMOPULSE_HPP

// Umbrella header for the two-species chemotaxis traveling-pulse
// laboratory: closed-form dispersion/bifurcation analysis on one side, a
// conservative semi-implicit channel simulator on the other, and the
// experiment drivers that compare the two.

#include "chemopulse/config.hpp"
#include "chemopulse/dispersion.hpp"
#include "chemopulse/errors.hpp"
#include "chemopulse/fitting.hpp"
#include "chemopulse/grid.hpp"
#include "chemopulse/interval.hpp"
#include "chemopulse/kymograph.hpp"
#include "chemopulse/params.hpp"
#include "chemopulse/profiles.hpp"
#include "chemopulse/roots.hpp"
#include "chemopulse/scheme.hpp"
#include "chemopulse/simulation.hpp"
#include "chemopulse/sweep.hpp"
#include "chemopulse/text_format.hpp"
#include "chemopulse/tracking.hpp"
#include "chemopulse/tridiagonal.hpp"

#endif
