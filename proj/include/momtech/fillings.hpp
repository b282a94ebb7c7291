#pragma once

#include <string>
#include <vector>

#include "momtech/interval.hpp"
#include "momtech/lattice.hpp"

namespace momtech {

/// Primitive (p, q), first nonzero coordinate positive, naming the curve
/// p mu + q lambda on the cusp torus.
struct Slope {
  long p = 1;
  long q = 0;

  /// Throws Precondition for (0, 0) or a non-primitive pair.
  static Slope normalized(long p, long q);
  friend auto operator<=>(const Slope&, const Slope&) = default;
};

std::string to_string(const Slope& s);

/// |p mu + q lambda|.
Interval slope_length(const CuspLattice& shape, const Slope& s);

/// 2 pi / sqrt(1 - (target / parent)^(2/3)): filling a cusp of a manifold of
/// volume `parent` can only reach volume `target` along a slope at most this
/// long. Requires 0 <= target.lo and target.hi < parent.lo.
Interval fkp_length_cutoff(const Interval& parent, const Interval& target);

enum class SlopeFlag { Ok, Borderline };

struct ShortSlope {
  Slope slope;
  Interval length;
  SlopeFlag flag = SlopeFlag::Ok;
};

/// Every slope whose length may be <= cutoff.hi, sorted by (length.lo, p, q).
/// Slopes not certified on one side of the cutoff are flagged Borderline.
std::vector<ShortSlope> enumerate_short_slopes(const CuspLattice& shape, const Interval& cutoff);

/// (1 - (2 pi / l_min)^2)^(3/2) parent. Requires l_min.lo > 2 pi.
Interval fkp_volume_lower_bound(const Interval& parent, const Interval& min_slope_length);

/// Closed manifold volume bound from a cusped one: x / 3.02.
Interval closed_volume_chain(const Interval& cusped_lower_bound);

struct FillingBound {
  Interval length_cutoff;
  Interval parent;
  Interval target;
};

FillingBound filling_bound(const Interval& parent, const Interval& target);

std::string format_slope(const ShortSlope& s);
std::string format_fkp(const FillingBound& b);

}  // namespace momtech
