#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "momtech/interval.hpp"
#include "momtech/rigorous_complex.hpp"

namespace momtech {

struct LatticeVector {
  long p = 0;
  long q = 0;
  Interval length;
};

/// Translation lattice Z mu + Z lambda of the boundary plane, positively
/// oriented: Im(lambda / mu) > 0.
class CuspLattice {
 public:
  CuspLattice() = default;
  /// Throws Precondition unless Im(conj(mu) lambda) is certified positive.
  CuspLattice(RigorousComplex mu, RigorousComplex lambda);

  const RigorousComplex& mu() const { return mu_; }
  const RigorousComplex& lambda() const { return lambda_; }

  /// Im(conj(mu) * lambda): the area of a fundamental parallelogram.
  Interval area() const;

  RigorousComplex translation(long p, long q) const;

  /// Real coordinates (x, y) with v = x mu + y lambda.
  std::pair<Interval, Interval> coordinates(const RigorousComplex& v) const;

  /// The integer pair (p, q) whose translation is v, if the coordinate
  /// enclosures each contain exactly one integer.
  std::optional<std::pair<long, long>> integer_coordinates(const RigorousComplex& v) const;

  /// Every nonzero (p, q) with |p mu + q lambda| possibly <= radius, with its
  /// length enclosure; (p, q) and (-p, -q) both appear. The search box is
  ///   |q| <= radius |mu| / area,  |p| <= radius |lambda| / area,
  /// which is complete because |p mu + q lambda| >= |q| area / |mu|.
  std::vector<LatticeVector> vectors_within(double radius) const;

  /// Box half-widths (p_max, q_max) used by vectors_within.
  std::pair<long, long> search_box(double radius) const;

 private:
  RigorousComplex mu_;
  RigorousComplex lambda_;
};

}  // namespace momtech
