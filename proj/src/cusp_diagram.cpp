#include "momtech/cusp_diagram.hpp"

#include <string>

#include "momtech/error.hpp"

namespace momtech {

CuspDiagram::CuspDiagram(CuspLattice lattice, std::vector<DiagramBall> balls, std::vector<DeclaredPair> pairs,
                         std::vector<DiagramSymmetry> symmetries)
    : lattice_(std::move(lattice)),
      balls_(std::move(balls)),
      pairs_(std::move(pairs)),
      symmetries_(std::move(symmetries)) {
  const int n = static_cast<int>(balls_.size());
  for (int i = 0; i < n; ++i) {
    if (balls_[i].diameter.lo() <= 0)
      fail(ErrorKind::Precondition, "ball " + std::to_string(i) + " has a non-positive diameter");
    if (balls_[i].label && *balls_[i].label <= 0)
      fail(ErrorKind::Precondition, "ball " + std::to_string(i) + " has a non-positive label");
  }
  for (const auto& pr : pairs_) {
    if (pr.first < 0 || pr.first >= n || pr.second < 0 || pr.second >= n)
      fail(ErrorKind::Precondition, "declared pair references a missing ball");
    if (pr.first == pr.second && pr.p == 0 && pr.q == 0)
      fail(ErrorKind::Precondition, "declared pair joins a ball to itself");
    if (pr.label <= 0) fail(ErrorKind::Precondition, "declared pair label must be positive");
  }
}

Horoball CuspDiagram::horoball(int i, long p, long q) const {
  const auto& ball = balls_.at(static_cast<std::size_t>(i));
  RigorousComplex c = ball.center;
  if (p != 0 || q != 0) c = c + lattice_.translation(p, q);
  return Horoball::finite(c, ball.diameter);
}

SymmetryAction resolve_symmetry(const CuspDiagram& diagram, const DiagramSymmetry& symmetry) {
  const auto& lattice = diagram.lattice();
  if (!norm(symmetry.rotation).contains(1.0))
    fail(ErrorKind::Structural, "declared symmetry rotation " + to_string(symmetry.rotation) + " is not unimodular");

  SymmetryAction action;
  auto mu_image = lattice.integer_coordinates(symmetry.rotation * lattice.mu());
  auto lambda_image = lattice.integer_coordinates(symmetry.rotation * lattice.lambda());
  if (!mu_image || !lambda_image) fail(ErrorKind::Structural, "declared symmetry does not preserve the lattice");
  action.a = mu_image->first;
  action.b = mu_image->second;
  action.c = lambda_image->first;
  action.d = lambda_image->second;
  if (action.a * action.d - action.b * action.c != 1)
    fail(ErrorKind::Structural, "declared symmetry acts on the lattice with determinant != 1");

  const auto& balls = diagram.balls();
  const int n = static_cast<int>(balls.size());
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    RigorousComplex w = symmetry.rotation * balls[i].center + symmetry.shift;
    int found = -1;
    std::pair<long, long> offset;
    for (int k = 0; k < n; ++k) {
      if (!balls[k].diameter.overlaps(balls[i].diameter)) continue;
      auto coords = lattice.integer_coordinates(w - balls[k].center);
      if (!coords) continue;
      if (found >= 0) fail(ErrorKind::Structural, "declared symmetry maps ball " + std::to_string(i) + " ambiguously");
      found = k;
      offset = *coords;
    }
    if (found < 0)
      fail(ErrorKind::Structural, "declared symmetry does not map ball " + std::to_string(i) + " onto the diagram");
    if (balls[i].label && balls[found].label && *balls[i].label != *balls[found].label)
      fail(ErrorKind::Structural, "declared symmetry maps ball " + std::to_string(i) + " to a ball with another label");
    if (hit[static_cast<std::size_t>(found)])
      fail(ErrorKind::Structural, "declared symmetry is not a permutation of the balls");
    hit[static_cast<std::size_t>(found)] = true;
    action.image.push_back(found);
    action.offset.push_back(offset);
  }
  return action;
}

}  // namespace momtech
