#include "momtech/horoball.hpp"

#include "momtech/error.hpp"

namespace momtech {

Horoball Horoball::finite(RigorousComplex center, Interval diameter) {
  if (diameter.lo() <= 0) fail(ErrorKind::Precondition, "horoball diameter must be positive: " + to_string(diameter));
  Horoball b;
  b.infinity_ = false;
  b.center_ = center;
  b.diameter_ = diameter;
  return b;
}

Interval orthodistance(const Horoball& a, const Horoball& b) {
  if (a.is_infinity() && b.is_infinity())
    fail(ErrorKind::Precondition, "orthodistance needs at least one finite horoball");
  if (b.is_infinity()) return -log(a.diameter());
  if (a.is_infinity()) return -log(b.diameter());
  Interval dist2 = norm(a.center() - b.center());
  if (dist2.lo() <= 0)
    fail(ErrorKind::Degenerate, "horoball centers may coincide: " + to_string(a.center()) + ", " + to_string(b.center()));
  // 2 log(D / sqrt(d_a d_b)) = log(D^2 / (d_a d_b))
  return log(dist2 / (a.diameter() * b.diameter()));
}

Shadow shadow_of(const Horoball& a) {
  if (a.is_infinity()) fail(ErrorKind::Precondition, "the base horoball casts no shadow");
  Interval half_diameter = a.diameter() / Interval(2.0);
  Interval from_distance = exp(-orthodistance(a, Horoball::at_infinity())) / Interval(2.0);
  if (!half_diameter.overlaps(from_distance))
    fail(ErrorKind::Internal, "shadow radius enclosures disagree: " + to_string(half_diameter) + " vs " +
                                  to_string(from_distance));
  return {a.center(), intersect(half_diameter, from_distance)};
}

}  // namespace momtech
