#pragma once

#include "momtech/interval.hpp"
#include "momtech/rigorous_complex.hpp"

namespace momtech {

/// A horoball in the upper half-space model: either the base horoball above
/// height 1, or a Euclidean ball tangent to the boundary plane at `center`.
class Horoball {
 public:
  static Horoball at_infinity() { return Horoball(); }
  /// Throws Precondition unless diameter.lo > 0.
  static Horoball finite(RigorousComplex center, Interval diameter);

  bool is_infinity() const { return infinity_; }
  const RigorousComplex& center() const { return center_; }
  const Interval& diameter() const { return diameter_; }

 private:
  Horoball() = default;

  bool infinity_ = true;
  RigorousComplex center_;
  Interval diameter_{0.0};
};

/// Shadow of a horoball on the base horosphere, a disk of radius ½e^(-o).
struct Shadow {
  RigorousComplex center;
  Interval radius;
};

/// Hyperbolic distance between two horoballs:
///   finite pair:      2 log(|c_a - c_b| / sqrt(d_a d_b))
///   against infinity: -log d
/// Negative values mean the horoballs overlap and are returned as is.
Interval orthodistance(const Horoball& a, const Horoball& b);

/// Shadow on the base horosphere. The radius is computed both as d/2 and as
/// ½exp(-orthodistance(a, infinity)); disjoint results raise Internal.
Shadow shadow_of(const Horoball& a);

}  // namespace momtech
