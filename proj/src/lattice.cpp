#include "momtech/lattice.hpp"

#include <cmath>
#include <limits>

#include "momtech/error.hpp"

namespace momtech {

CuspLattice::CuspLattice(RigorousComplex mu, RigorousComplex lambda) : mu_(mu), lambda_(lambda) {
  if (area().lo() <= 0)
    fail(ErrorKind::Precondition, "lattice generators are not a positively oriented basis: Im(lambda/mu) " +
                                      to_string(area()) + " is not certified positive");
}

Interval CuspLattice::area() const { return (mu_.conj() * lambda_).im; }

RigorousComplex CuspLattice::translation(long p, long q) const {
  return RigorousComplex(Interval(static_cast<double>(p))) * mu_ +
         RigorousComplex(Interval(static_cast<double>(q))) * lambda_;
}

std::pair<Interval, Interval> CuspLattice::coordinates(const RigorousComplex& v) const {
  // v = x mu + y lambda  =>  Im(conj(mu) v) = y A,  Im(conj(v) lambda) = x A.
  const Interval a = area();
  return {(v.conj() * lambda_).im / a, (mu_.conj() * v).im / a};
}

std::optional<std::pair<long, long>> CuspLattice::integer_coordinates(const RigorousComplex& v) const {
  auto [x, y] = coordinates(v);
  auto unique_integer = [](const Interval& t) -> std::optional<long> {
    if (t.width() >= 1.0) return std::nullopt;
    double n = std::ceil(t.lo());
    if (n > t.hi()) return std::nullopt;
    if (n + 1 <= t.hi()) return std::nullopt;
    return static_cast<long>(n);
  };
  auto p = unique_integer(x);
  auto q = unique_integer(y);
  if (!p || !q) return std::nullopt;
  return std::pair{*p, *q};
}

std::pair<long, long> CuspLattice::search_box(double radius) const {
  if (!(radius >= 0) || !std::isfinite(radius)) fail(ErrorKind::Precondition, "lattice search radius must be finite");
  const Interval a = area();
  const Interval r(radius);
  double p_max = std::floor((r * abs(lambda_) / a).hi());
  double q_max = std::floor((r * abs(mu_) / a).hi());
  constexpr double kLimit = 1e7;
  if (p_max > kLimit || q_max > kLimit) fail(ErrorKind::Precondition, "lattice search box is unreasonably large");
  return {static_cast<long>(p_max), static_cast<long>(q_max)};
}

std::vector<LatticeVector> CuspLattice::vectors_within(double radius) const {
  auto [p_max, q_max] = search_box(radius);
  std::vector<LatticeVector> out;
  for (long p = -p_max; p <= p_max; ++p) {
    for (long q = -q_max; q <= q_max; ++q) {
      if (p == 0 && q == 0) continue;
      Interval len = abs(translation(p, q));
      if (len.lo() <= radius) out.push_back({p, q, len});
    }
  }
  return out;
}

}  // namespace momtech
