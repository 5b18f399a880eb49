#pragma once

#include "stdsn/state.hpp"

namespace stdsn {

enum class Mode { A, B };

/// <a^dag a> (mode A) or <b^dag b> (mode B); vacuum seed only.
double mean_photon(const StateParams& p, Mode mode = Mode::A);
/// <a^dag^2 a^2> or <b^dag^2 b^2>.
double second_moment(const StateParams& p, Mode mode = Mode::A);
/// <a^dag a b^dag b>.
double cross_moment(const StateParams& p);

/// <a^dag^2 a^2> / <a^dag a>^2 - 1. Negative values mean sub-Poissonian statistics.
double g2(const StateParams& p, Mode mode = Mode::A);
/// The r = 0 special case of g2 in closed form.
double g2_r0(const StateParams& p);
/// sqrt(<a^dag^2 a^2><b^dag^2 b^2>) / <a^dag a b^dag b> - 1. Negative values violate
/// the classical Cauchy-Schwarz inequality.
double cs_factor(const StateParams& p);

}  // namespace stdsn
