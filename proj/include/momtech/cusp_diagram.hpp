#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "momtech/horoball.hpp"
#include "momtech/lattice.hpp"

namespace momtech {

/// One representative per H-orbit of horoballs below the base horoball.
/// `label`, when present, declares the orthopair class of (ball, B_inf).
struct DiagramBall {
  RigorousComplex center;
  Interval diameter;
  std::optional<int> label;
};

/// Declares that (B_first, B_second + p mu + q lambda) lies in orthopair
/// class `label` (an edge label of a cusp diagram).
struct DeclaredPair {
  int first = 0;
  int second = 0;
  long p = 0;
  long q = 0;
  int label = 0;
};

/// Declared isometry z -> rotation * z + shift of the boundary plane mapping
/// the diagram onto itself. Pairs related by a declared symmetry are
/// certified to lie in the same orthopair class.
struct DiagramSymmetry {
  RigorousComplex rotation;
  RigorousComplex shift;
};

/// Resolved action of a DiagramSymmetry on ball indices and lattice
/// coordinates: ball i maps to ball image[i] translated by offset[i], and the
/// translation (p, q) maps to (p a + q c, p b + q d).
struct SymmetryAction {
  std::vector<int> image;
  std::vector<std::pair<long, long>> offset;
  long a = 1, b = 0, c = 0, d = 1;
};

class CuspDiagram {
 public:
  CuspDiagram() = default;
  /// Throws Precondition on out-of-range ball references or non-positive
  /// diameters.
  CuspDiagram(CuspLattice lattice, std::vector<DiagramBall> balls, std::vector<DeclaredPair> pairs = {},
              std::vector<DiagramSymmetry> symmetries = {});

  const CuspLattice& lattice() const { return lattice_; }
  const std::vector<DiagramBall>& balls() const { return balls_; }
  const std::vector<DeclaredPair>& pairs() const { return pairs_; }
  const std::vector<DiagramSymmetry>& symmetries() const { return symmetries_; }

  /// Ball i translated by p mu + q lambda.
  Horoball horoball(int i, long p = 0, long q = 0) const;

 private:
  CuspLattice lattice_;
  std::vector<DiagramBall> balls_;
  std::vector<DeclaredPair> pairs_;
  std::vector<DiagramSymmetry> symmetries_;
};

/// Throws Structural if the symmetry does not preserve the lattice, ball
/// diameters and labels.
SymmetryAction resolve_symmetry(const CuspDiagram& diagram, const DiagramSymmetry& symmetry);

}  // namespace momtech
