#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace momtech {

/// Ideal dipyramid over a v-gon. Local vertices: 0 = north pole, 1 = south
/// pole, 2 + i = equatorial vertex e_i. Faces 0..v-1 are N_i = (P_N, e_i,
/// e_i+1) and faces v..2v-1 are S_i = (P_S, e_i+1, e_i), both listed in the
/// outward cyclic order so the pole always sits at position 0.
struct Dipyramid {
  int sides = 3;

  int face_count() const { return 2 * sides; }
  int vertex_count() const { return sides + 2; }
  int edge_count() const { return 3 * sides; }
  std::array<int, 3> face_vertices(int face) const;
  static bool is_polar(int vertex) { return vertex < 2; }
  std::string name() const { return "D" + std::to_string(sides); }
  friend bool operator==(const Dipyramid&, const Dipyramid&) = default;
};

/// Polyhedra of one candidate cellulation, sorted by decreasing sides.
using Inventory = std::vector<Dipyramid>;

std::string to_string(const Inventory& inv);

/// Partitions of 3n into n parts >= 2 with the 2s dropped. Unsupported unless
/// n is 2 or 3.
std::vector<Inventory> polyhedron_inventories(int n);

/// Face pairing of an inventory. Faces are numbered globally, polyhedron by
/// polyhedron. perm[f][k] is the position in partner[f] of the vertex at
/// position k of f.
struct GluingDescription {
  Inventory polyhedra;
  std::vector<int> partner;
  std::vector<std::array<int, 3>> perm;

  /// Every face glued by the unique orientation-reversing map sending pole to
  /// pole: (P, x, y) -> (P', y', x').
  static GluingDescription standard(Inventory polyhedra, std::vector<int> partner);

  int face_count() const;
  int face_offset(int polyhedron) const;
  /// (polyhedron, local face) of a global face.
  std::pair<int, int> locate(int face) const;
};

/// Throws Structural for a non-involutive pairing, an inconsistent vertex
/// map, or a pole glued to an equatorial vertex.
void check_gluing(const GluingDescription& g);

enum class VertexKind { Polar, Equatorial, Mixed };

struct VertexLink {
  int euler = 0;
  bool orientable = true;
  VertexKind kind = VertexKind::Equatorial;
  int polyhedron_vertices = 0;
};

struct VertexLinkReport {
  std::vector<VertexLink> links;
  int edge_classes = 0;
  bool folded_edge = false;
  int euler_characteristic = 0;  // of the complex with ideal vertices removed

  bool all_tori() const;
  int polar_classes() const;
  /// All links orientable tori, no folded edge, and the poles form one class.
  bool retained() const;
};

VertexLinkReport vertex_links(const GluingDescription& g);

struct HomologyInvariants {
  int rank = 0;
  std::vector<std::int64_t> torsion;
  friend bool operator==(const HomologyInvariants&, const HomologyInvariants&) = default;
};

std::string to_string(const HomologyInvariants& h);

/// H_1 of the compact manifold with the ideal vertices truncated, from the
/// dual 2-complex: cells, face pairs and edge cycles.
HomologyInvariants homology(const GluingDescription& g);

/// Minimum over orderings of identical polyhedra and rotations / pole-swapping
/// half-turns of each dipyramid of the partner encoding.
std::string canonical_signature(const GluingDescription& g);

/// Face permutations of the symmetry group of an inventory, identity first.
std::vector<std::vector<int>> inventory_symmetries(const Inventory& inv);

struct CensusStats {
  std::int64_t matchings = 0;
  std::int64_t retained_matchings = 0;
  std::int64_t orbits = 0;
  std::int64_t retained_orbits = 0;
  CensusStats& operator+=(const CensusStats& o);
  friend bool operator==(const CensusStats&, const CensusStats&) = default;
};

struct CensusRecord {
  std::string signature;
  std::string inventory;
  std::vector<int> partner;
  std::int64_t orbit_size = 0;
  VertexLinkReport links;
  HomologyInvariants h1;
};

std::string format_record(const CensusRecord& r);

/// Orderly enumeration: calls emit once per symmetry orbit of face pairings
/// with the lex-minimal representative and its orbit size, in deterministic
/// depth-first order.
void enumerate_gluings(const Inventory& inv,
                       const std::function<void(const GluingDescription&, std::int64_t orbit_size)>& emit);

struct CensusOptions {
  int workers = 0;             // 0: MOMTECH_WORKERS or 1
  std::string checkpoint;      // empty: none
};

struct CensusResult {
  std::vector<CensusRecord> records;  // retained, sorted by signature
  std::map<std::string, CensusStats> per_inventory;
  CensusStats total;
};

CensusResult run_census(const std::vector<Inventory>& inventories, const CensusOptions& options);
CensusResult run_mom_census(int n, const CensusOptions& options);

std::string format_census(int n, const CensusResult& r);

}  // namespace momtech
