#pragma once

#include "momtech/interval.hpp"

namespace momtech {

/// Enclosure of the Lobachevsky function  L(theta) = -int_0^theta log|2 sin t| dt.
///
/// L is odd and pi-periodic, increasing on (-pi/6, pi/6) and decreasing on
/// (pi/6, 5pi/6). An interval argument is handled by evaluating both
/// endpoints and adding the extreme value L(pi/6) for every critical point the
/// interval may contain.
Interval lobachevsky(const Interval& theta);

/// Enclosure of max L = L(pi/6).
Interval lobachevsky_max();

namespace detail {
/// Series evaluation for t inside [0, 3pi/4]:
///   L(t) = t - t log(2t) + t * sum_k zeta(2k) / (k (2k+1)) (t/pi)^(2k)
/// with a certified geometric tail.
Interval lobachevsky_series(const Interval& t);
}  // namespace detail

}  // namespace momtech
