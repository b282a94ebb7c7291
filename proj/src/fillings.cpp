#include "momtech/fillings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "momtech/error.hpp"

namespace momtech {

namespace {

Interval two_pi() { return pi() * Interval(2.0); }

}  // namespace

Slope Slope::normalized(long p, long q) {
  if (p == 0 && q == 0) fail(ErrorKind::Precondition, "slope (0,0) is not a curve");
  if (std::gcd(p, q) != 1) fail(ErrorKind::Precondition, "slope " + std::to_string(p) + "/" + std::to_string(q) + " is not primitive");
  if (p < 0 || (p == 0 && q < 0)) return {-p, -q};
  return {p, q};
}

std::string to_string(const Slope& s) { return std::to_string(s.p) + "/" + std::to_string(s.q); }

Interval slope_length(const CuspLattice& shape, const Slope& s) { return abs(shape.translation(s.p, s.q)); }

Interval fkp_length_cutoff(const Interval& parent, const Interval& target) {
  if (target.lo() < 0 || parent.lo() <= 0)
    fail(ErrorKind::Precondition, "volumes must be positive: parent " + to_string(parent) + ", target " + to_string(target));
  if (!target.certainly_less(parent))
    fail(ErrorKind::Precondition,
         "target volume " + to_string(target) + " is not below parent volume " + to_string(parent));
  Interval ratio = pow_two_thirds(target / parent);
  Interval out = two_pi() / sqrt(Interval(1.0) - ratio);
  // The cutoff is at least 2 pi; keep the enclosure from dipping below.
  return {std::max(out.lo(), two_pi().lo()), out.hi()};
}

std::vector<ShortSlope> enumerate_short_slopes(const CuspLattice& shape, const Interval& cutoff) {
  if (!std::isfinite(cutoff.hi())) fail(ErrorKind::Precondition, "slope cutoff must be finite");
  std::vector<ShortSlope> out;
  if (cutoff.hi() <= 0) return out;
  std::set<Slope> seen;
  for (const auto& v : shape.vectors_within(cutoff.hi())) {
    if (std::gcd(v.p, v.q) != 1) continue;
    Slope s = Slope::normalized(v.p, v.q);
    if (!seen.insert(s).second) continue;
    Interval len = slope_length(shape, s);
    if (len.lo() > cutoff.hi()) continue;
    out.push_back({s, len, len.hi() <= cutoff.lo() ? SlopeFlag::Ok : SlopeFlag::Borderline});
  }
  std::sort(out.begin(), out.end(), [](const ShortSlope& a, const ShortSlope& b) {
    if (a.length.lo() != b.length.lo()) return a.length.lo() < b.length.lo();
    return a.slope < b.slope;
  });
  return out;
}

Interval fkp_volume_lower_bound(const Interval& parent, const Interval& min_slope_length) {
  if (!two_pi().certainly_less(min_slope_length))
    fail(ErrorKind::Precondition, "minimal slope length " + to_string(min_slope_length) + " is not above 2 pi");
  if (parent.lo() < 0) fail(ErrorKind::Precondition, "parent volume " + to_string(parent) + " is negative");
  Interval factor = Interval(1.0) - sqr(two_pi() / min_slope_length);
  return pow_three_halves(factor) * parent;
}

Interval closed_volume_chain(const Interval& cusped_lower_bound) {
  if (cusped_lower_bound.lo() < 0)
    fail(ErrorKind::Precondition, "cusped volume bound " + to_string(cusped_lower_bound) + " is negative");
  return cusped_lower_bound / Interval::around(3.02);
}

FillingBound filling_bound(const Interval& parent, const Interval& target) {
  return {fkp_length_cutoff(parent, target), parent, target};
}

std::string format_slope(const ShortSlope& s) {
  return "SLOPE " + to_string(s.slope) + " length=" + to_string(s.length) +
         " flag=" + (s.flag == SlopeFlag::Ok ? "OK" : "BORDERLINE");
}

std::string format_fkp(const FillingBound& b) {
  return "FKP cutoff=" + to_string(b.length_cutoff) + " parentvol=" + to_string(b.parent) +
         " targetvol=" + to_string(b.target);
}

}  // namespace momtech
