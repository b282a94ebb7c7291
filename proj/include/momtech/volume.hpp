#pragma once

#include <vector>

#include "momtech/interval.hpp"
#include "momtech/rigorous_complex.hpp"

namespace momtech {

/// Approximate shape parameters of an ideal triangulation together with a
/// certified bound `delta` on the distance (in every coordinate) between the
/// approximate and the true shapes.
class ShapeSolution {
 public:
  ShapeSolution() = default;
  ShapeSolution(std::vector<RigorousComplex> shapes, Interval delta);

  const std::vector<RigorousComplex>& shapes() const { return shapes_; }
  const Interval& delta() const { return delta_; }

  /// Some shape rectangle reaches the closed lower half plane.
  bool degenerate() const;

 private:
  std::vector<RigorousComplex> shapes_;
  Interval delta_{0.0};
};

/// The three dihedral angles arg z, arg 1/(1-z), arg (z-1)/z of the ideal
/// tetrahedron with shape z; their sum is verified to enclose pi.
struct DihedralAngles {
  Interval alpha;
  Interval beta;
  Interval gamma;
};

DihedralAngles dihedral_angles(const RigorousComplex& z);

/// Volume L(arg z) + L(arg 1/(1-z)) + L(arg (z-1)/z). Throws Degenerate unless
/// z.im.lo > 0.
Interval ideal_tetrahedron_volume(const RigorousComplex& z);

/// Sum of tetrahedron volumes, each shape rectangle first enlarged by
/// delta.hi in both coordinates. A shape whose enlarged rectangle reaches the
/// real axis makes the result Uncertifiable.
Interval triangulation_volume(const ShapeSolution& solution);

}  // namespace momtech
