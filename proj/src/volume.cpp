#include "momtech/volume.hpp"

#include <string>

#include "momtech/error.hpp"
#include "momtech/lobachevsky.hpp"

namespace momtech {

ShapeSolution::ShapeSolution(std::vector<RigorousComplex> shapes, Interval delta)
    : shapes_(std::move(shapes)), delta_(delta) {
  if (delta_.lo() < 0) fail(ErrorKind::Precondition, "shape error bound delta must be non-negative");
}

bool ShapeSolution::degenerate() const {
  for (const auto& z : shapes_) {
    if (z.im.lo() <= 0) return true;
  }
  return false;
}

DihedralAngles dihedral_angles(const RigorousComplex& z) {
  if (z.im.lo() <= 0)
    fail(ErrorKind::Degenerate, "tetrahedron shape is not positively oriented: " + to_string(z));
  const RigorousComplex one(Interval(1.0));
  Interval alpha = arg(z);
  Interval beta = arg(one / (one - z));
  Interval gamma = arg((z - one) / z);

  const Interval p = pi();
  Interval total = alpha + beta + gamma;
  if (!total.overlaps(p))
    fail(ErrorKind::Internal, "dihedral angles " + to_string(total) + " do not sum to pi");
  // Each angle is also pi minus the other two.
  alpha = intersect(alpha, p - beta - gamma);
  beta = intersect(beta, p - alpha - gamma);
  gamma = intersect(gamma, p - alpha - beta);
  return {alpha, beta, gamma};
}

Interval ideal_tetrahedron_volume(const RigorousComplex& z) {
  DihedralAngles a = dihedral_angles(z);
  return lobachevsky(a.alpha) + lobachevsky(a.beta) + lobachevsky(a.gamma);
}

Interval triangulation_volume(const ShapeSolution& solution) {
  const double grow = solution.delta().hi();
  Interval total(0.0);
  const auto& shapes = solution.shapes();
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (shapes[i].im.lo() <= 0)
      fail(ErrorKind::Degenerate, "tetrahedron " + std::to_string(i) + " is degenerate: " + to_string(shapes[i]));
    RigorousComplex z = grow > 0 ? shapes[i].inflate(grow) : shapes[i];
    if (z.im.lo() <= 0)
      fail(ErrorKind::Uncertifiable, "tetrahedron " + std::to_string(i) + ": delta " + to_string(solution.delta()) +
                                         " leaves the orientation of the shape uncertain");
    total = total + ideal_tetrahedron_volume(z);
  }
  return total;
}

}  // namespace momtech
