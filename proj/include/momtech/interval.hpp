#pragma once

#include <iosfwd>
#include <string>

namespace momtech {

/// Closed real interval [lo, hi] with outward-rounded arithmetic.
///
/// Basic operations (+ - * / sqrt) are rounded outward exactly: the error of
/// the round-to-nearest result is recovered with an error-free transformation
/// (TwoSum / FMA residual) and the endpoint is stepped by one ulp only in the
/// direction of the true value. Library transcendentals are widened by
/// kLibmUlps on each side.
class Interval {
 public:
  static constexpr int kLibmUlps = 4;

  constexpr Interval() = default;
  Interval(double x);  // NOLINT: points convert implicitly
  Interval(double lo, double hi);

  static Interval hull(const Interval& a, const Interval& b);
  /// Smallest interval containing x, x being the nearest double to a real
  /// number r (e.g. a parsed decimal): [prev(x), next(x)].
  static Interval around(double x);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const;
  /// Upper bound on max(hi - mid, mid - lo).
  double rad() const;
  double width() const;

  bool is_point() const { return lo_ == hi_; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

  /// Every point of *this is < every point of o.
  bool certainly_less(const Interval& o) const { return hi_ < o.lo_; }
  bool certainly_le(const Interval& o) const { return hi_ <= o.lo_; }

  /// Enlarge by r (rounded up) on both sides.
  Interval inflate(double r) const;

  Interval operator-() const { return {-hi_, -lo_}; }
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Intersection; throws Internal if the intervals are disjoint.
Interval intersect(const Interval& a, const Interval& b);

Interval abs(const Interval& x);
Interval sqr(const Interval& x);
Interval sqrt(const Interval& x);
Interval cbrt(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval acos(const Interval& x);
/// x^(2/3) for x >= 0.
Interval pow_two_thirds(const Interval& x);
/// x^(3/2) for x >= 0.
Interval pow_three_halves(const Interval& x);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);

/// Enclosure of pi.
Interval pi();

std::string to_string(const Interval& x);
std::ostream& operator<<(std::ostream& os, const Interval& x);

namespace rounding {
double next_up(double x);
double next_down(double x);
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);
}  // namespace rounding

}  // namespace momtech
