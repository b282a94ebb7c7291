#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "census_oracle.hpp"
#include "doctest.h"
#include "momtech/census.hpp"
#include "momtech/error.hpp"
#include "momtech/smith.hpp"

using namespace momtech;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

std::vector<int> sides_of(const Inventory& inv) {
  std::vector<int> s;
  for (const auto& d : inv) s.push_back(d.sides);
  return s;
}

Inventory inventory(std::vector<int> sides) {
  Inventory inv;
  for (int s : sides) inv.push_back({s});
  return inv;
}

std::int64_t double_factorial(int odd) {
  std::int64_t r = 1;
  for (int k = odd; k > 1; k -= 2) r *= k;
  return r;
}

struct Emitted {
  std::vector<std::vector<int>> reps;
  std::vector<std::int64_t> orbit;
};

Emitted emitted(const Inventory& inv) {
  Emitted e;
  enumerate_gluings(inv, [&](const GluingDescription& g, std::int64_t orbit) {
    e.reps.push_back(g.partner);
    e.orbit.push_back(orbit);
  });
  return e;
}

std::vector<int> act(const std::vector<int>& sigma, const std::vector<int>& partner) {
  std::vector<int> image(partner.size());
  for (std::size_t f = 0; f < partner.size(); ++f) image[sigma[f]] = sigma[partner[f]];
  return image;
}

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("momtech_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove(p);
  return p;
}

// Independent Burnside references; three D3s frozen from the offline tool.
constexpr census_oracle::Counts kD3Cubed{34459425, 4162968, 29232, 3401};

}  // namespace

TEST_CASE("inventories partition 3n into dipyramids") {
  auto two = polyhedron_inventories(2);
  REQUIRE(two.size() == 2);
  CHECK(to_string(two[0]) == "D4");
  CHECK(to_string(two[1]) == "D3+D3");
  auto three = polyhedron_inventories(3);
  REQUIRE(three.size() == 3);
  CHECK(to_string(three[0]) == "D5");
  CHECK(to_string(three[1]) == "D4+D3");
  CHECK(to_string(three[2]) == "D3+D3+D3");
  for (int n : {2, 3})
    for (const auto& inv : polyhedron_inventories(n)) {
      // Parts equal to 2 are dropped from the partition of 3n.
      int sum = 0;
      for (const auto& d : inv) sum += d.sides;
      CHECK(sum + 2 * (n - static_cast<int>(inv.size())) == 3 * n);
      CHECK(std::is_sorted(inv.begin(), inv.end(), [](auto& a, auto& b) { return a.sides > b.sides; }));
      int faces = 0;
      for (const auto& d : inv) faces += d.face_count();
      CHECK(faces % 2 == 0);
    }
  CHECK(kind_of([] { polyhedron_inventories(4); }) == ErrorKind::Unsupported);
  CHECK(kind_of([] { polyhedron_inventories(1); }) == ErrorKind::Unsupported);
}

TEST_CASE("dipyramid faces keep the pole first and are consistently oriented") {
  for (int v : {3, 4, 5, 7}) {
    Dipyramid d{v};
    std::map<std::pair<int, int>, int> directed;
    for (int f = 0; f < d.face_count(); ++f) {
      auto fv = d.face_vertices(f);
      CHECK(Dipyramid::is_polar(fv[0]));
      CHECK_FALSE(Dipyramid::is_polar(fv[1]));
      CHECK_FALSE(Dipyramid::is_polar(fv[2]));
      for (int k = 0; k < 3; ++k) ++directed[{fv[k], fv[(k + 1) % 3]}];
    }
    // A closed oriented surface uses every edge once in each direction.
    CHECK(directed.size() == static_cast<std::size_t>(2 * d.edge_count()));
    for (auto [e, count] : directed) {
      CHECK(count == 1);
      CHECK(directed.count({e.second, e.first}) == 1);
    }
  }
}

TEST_CASE("Smith normal form") {
  CHECK(invariant_factors({{2, 0}, {0, 3}}) == std::vector<std::int64_t>{1, 6});
  CHECK(invariant_factors({{2, 4}, {6, 8}}) == std::vector<std::int64_t>{2, 4});
  CHECK(invariant_factors({{0, 0}, {0, 0}}).empty());
  CHECK(invariant_factors({}).empty());
  CHECK(matrix_rank({{1, 2}, {2, 4}}) == 1);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 5), entry(-6, 6);
  for (int trial = 0; trial < 300; ++trial) {
    int r = dim(rng), c = dim(rng);
    IntMatrix m(r, std::vector<std::int64_t>(c));
    for (auto& row : m)
      for (auto& x : row) x = trial % 3 == 0 ? entry(rng) * 2 : entry(rng);
    auto snf = invariant_factors(m);
    CHECK(snf == census_oracle::determinantal_factors(m));
    CHECK(static_cast<int>(snf.size()) == matrix_rank(m));
    for (std::size_t k = 1; k < snf.size(); ++k) CHECK(snf[k] % snf[k - 1] == 0);
  }
}

TEST_CASE("symmetry groups agree with the vertex-map construction") {
  for (auto sides : std::vector<std::vector<int>>{{4}, {3, 3}, {5}, {4, 3}, {3, 3, 3}}) {
    auto lib = inventory_symmetries(inventory(sides));
    auto ref = census_oracle::symmetry_group(sides);
    REQUIRE_FALSE(lib.empty());
    for (std::size_t f = 0; f < lib[0].size(); ++f) CHECK(lib[0][f] == static_cast<int>(f));
    std::sort(lib.begin(), lib.end());
    std::sort(ref.begin(), ref.end());
    CHECK(lib == ref);
    CHECK(std::adjacent_find(lib.begin(), lib.end()) == lib.end());
  }
}

TEST_CASE("enumeration yields one lex-minimal representative per orbit") {
  for (auto sides : std::vector<std::vector<int>>{{4}, {3, 3}, {5}}) {
    auto inv = inventory(sides);
    auto group = census_oracle::symmetry_group(sides);
    auto e = emitted(inv);
    std::set<std::vector<int>> seen;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < e.reps.size(); ++i) {
      std::set<std::vector<int>> orbit;
      for (const auto& sigma : group) orbit.insert(act(sigma, e.reps[i]));
      CHECK(*orbit.begin() == e.reps[i]);
      CHECK(static_cast<std::int64_t>(orbit.size()) == e.orbit[i]);
      for (const auto& m : orbit) CHECK(seen.insert(m).second);
      total += e.orbit[i];
    }
    int faces = 0;
    for (int s : sides) faces += 2 * s;
    CHECK(total == double_factorial(faces - 1));
    CHECK(static_cast<std::int64_t>(seen.size()) == total);
  }
}

TEST_CASE("census counts match independent Burnside counts") {
  std::map<std::string, census_oracle::Counts> expected;
  for (auto sides : std::vector<std::vector<int>>{{4}, {3, 3}, {5}, {4, 3}})
    expected[to_string(inventory(sides))] = census_oracle::burnside(sides);
  expected["D3+D3+D3"] = kD3Cubed;

  auto two = run_mom_census(2, {1, ""});
  auto three = run_mom_census(3, {2, ""});
  for (const auto* r : {&two, &three})
    for (const auto& [name, s] : r->per_inventory) {
      INFO(name);
      REQUIRE(expected.count(name));
      const auto& x = expected[name];
      CHECK(s.matchings == x.matchings);
      CHECK(s.orbits == x.orbits);
      CHECK(s.retained_matchings == x.retained_matchings);
      CHECK(s.retained_orbits == x.retained_orbits);
      int faces = 0;
      for (const auto& inv : polyhedron_inventories(r == &two ? 2 : 3))
        if (to_string(inv) == name)
          for (const auto& d : inv) faces += d.face_count();
      CHECK(s.matchings == double_factorial(faces - 1));
    }
  CHECK(two.total.retained_orbits == 44);
  CHECK(three.total.retained_orbits == 4187);
  CHECK(static_cast<std::int64_t>(two.records.size()) == two.total.retained_orbits);
  CHECK(static_cast<std::int64_t>(three.records.size()) == three.total.retained_orbits);
}


namespace {

Inventory inventory_named(const std::string& name) {
  for (int n : {2, 3})
    for (const auto& inv : polyhedron_inventories(n))
      if (to_string(inv) == name) return inv;
  FAIL("unknown inventory " << name);
  return {};
}

const CensusResult& census(int n) {
  static std::map<int, CensusResult> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, run_mom_census(n, {0, ""})).first;
  return it->second;
}

int tori(const VertexLinkReport& r) {
  return static_cast<int>(r.links.size());
}

}  // namespace

TEST_CASE("retained gluings have torus cusps and one polar class") {
  for (int n : {2, 3})
    for (const auto& rec : census(n).records) {
      auto inv = inventory_named(rec.inventory);
      auto g = GluingDescription::standard(inv, rec.partner);
      check_gluing(g);
      auto links = vertex_links(g);
      CHECK(links.retained());
      CHECK(census_oracle::retained(sides_of(inv), rec.partner));
      CHECK(links.euler_characteristic == 0);
      CHECK(links.polar_classes() == 1);
      // Euler characteristic zero with C cells and F/2 face pairs.
      CHECK(links.edge_classes == g.face_count() / 2 - static_cast<int>(inv.size()));
      int vertices = 0;
      for (const auto& l : links.links) {
        CHECK(l.euler == 0);
        CHECK(l.orientable);
        vertices += l.polyhedron_vertices;
      }
      int expected_vertices = 0;
      for (const auto& d : inv) expected_vertices += d.vertex_count();
      CHECK(vertices == expected_vertices);
      // Half-lives-half-dies: rank of H_1 is at least the number of cusps.
      CHECK(rec.h1.rank >= tori(links));
    }
}

TEST_CASE("homology agrees with a presentation-matrix computation") {
  std::map<std::string, int> tally;
  for (int n : {2, 3})
    for (const auto& rec : census(n).records) {
      auto inv = inventory_named(rec.inventory);
      auto ref = census_oracle::homology(sides_of(inv), rec.partner);
      CHECK(rec.h1.rank == ref.rank);
      CHECK(rec.h1.torsion == ref.torsion);
      ++tally[rec.inventory + " " + to_string(rec.h1) + " t" + std::to_string(tori(rec.links))];
    }
  const std::map<std::string, int> expected{
      {"D4 2+[] t2", 5},           {"D3+D3 2+[] t2", 39},       {"D5 2+[] t2", 26},
      {"D4+D3 2+[2] t2", 20},      {"D4+D3 2+[3] t2", 3},       {"D4+D3 2+[] t2", 731},
      {"D4+D3 3+[] t3", 6},        {"D3+D3+D3 2+[2] t2", 99},   {"D3+D3+D3 2+[3] t2", 20},
      {"D3+D3+D3 2+[] t2", 3253},  {"D3+D3+D3 3+[] t2", 2},     {"D3+D3+D3 3+[] t3", 27},
  };
  CHECK(tally == expected);
}

TEST_CASE("two-cusped Mom-2 gluings look like the Whitehead link complement") {
  for (const auto& rec : census(2).records) {
    CHECK(tori(rec.links) == 2);
    CHECK(rec.h1 == HomologyInvariants{2, {}});
  }
}

TEST_CASE("gluings that fail the link filter") {
  // Each face of one D3 glued to the matching face of another: the result is
  // a double whose pole links are spheres.
  std::vector<int> partner(12);
  for (int f = 0; f < 6; ++f) {
    partner[f] = f + 6;
    partner[f + 6] = f;
  }
  auto links = vertex_links(GluingDescription::standard(inventory({3, 3}), partner));
  CHECK_FALSE(links.retained());
  bool sphere = false;
  for (const auto& l : links.links) sphere = sphere || l.euler == 2;
  CHECK(sphere);
  CHECK_FALSE(census_oracle::retained({3, 3}, partner));

  // Independent filter agreement over the whole D4 and D3+D3 streams.
  for (auto sides : std::vector<std::vector<int>>{{4}, {3, 3}, {5}}) {
    auto inv = inventory(sides);
    enumerate_gluings(inv, [&](const GluingDescription& g, std::int64_t) {
      CHECK(vertex_links(g).retained() == census_oracle::retained(sides, g.partner));
    });
  }
}

TEST_CASE("structural errors in gluings") {
  auto inv = inventory({4});
  auto ok = GluingDescription::standard(inv, {4, 5, 6, 7, 0, 1, 2, 3});
  CHECK_NOTHROW(check_gluing(ok));

  auto self = ok;
  self.partner[0] = 0;
  CHECK(kind_of([&] { check_gluing(self); }) == ErrorKind::Structural);

  auto not_involution = ok;
  not_involution.partner[0] = 5;
  CHECK(kind_of([&] { check_gluing(not_involution); }) == ErrorKind::Structural);

  auto bad_perm = ok;
  bad_perm.perm[0] = {0, 0, 1};
  CHECK(kind_of([&] { check_gluing(bad_perm); }) == ErrorKind::Structural);

  auto not_inverse = ok;
  not_inverse.perm[0] = {0, 1, 2};
  CHECK(kind_of([&] { check_gluing(not_inverse); }) == ErrorKind::Structural);

  auto polar_to_equatorial = ok;
  polar_to_equatorial.perm[0] = {1, 0, 2};
  polar_to_equatorial.perm[4] = {1, 0, 2};
  CHECK(kind_of([&] { check_gluing(polar_to_equatorial); }) == ErrorKind::Structural);

  auto short_partner = ok;
  short_partner.partner.pop_back();
  CHECK(kind_of([&] { check_gluing(short_partner); }) == ErrorKind::Structural);

  auto non_standard = ok;
  non_standard.perm[0] = {0, 1, 2};
  non_standard.perm[4] = {0, 1, 2};
  CHECK(kind_of([&] { canonical_signature(non_standard); }) == ErrorKind::Precondition);
}

TEST_CASE("canonical signatures are invariant under relabeling") {
  std::mt19937_64 rng(5);
  for (auto sides : std::vector<std::vector<int>>{{4, 3}, {3, 3, 3}}) {
    auto inv = inventory(sides);
    auto group = census_oracle::symmetry_group(sides);
    std::vector<std::vector<int>> reps;
    enumerate_gluings(inv, [&](const GluingDescription& g, std::int64_t) {
      if (reps.size() < 400) reps.push_back(g.partner);
    });
    for (int trial = 0; trial < 1000; ++trial) {
      const auto& rep = reps[rng() % reps.size()];
      const auto sig = canonical_signature(GluingDescription::standard(inv, rep));
      auto image = act(group[rng() % group.size()], rep);
      CHECK(canonical_signature(GluingDescription::standard(inv, image)) == sig);
      if (sides == std::vector<int>{4, 3}) {
        // List the D3 first: its faces move to 0..5, the D4's to 6..13.
        std::vector<int> move(14), swapped(14);
        for (int f = 0; f < 14; ++f) move[f] = f < 8 ? f + 6 : f - 8;
        for (int f = 0; f < 14; ++f) swapped[move[f]] = move[image[f]];
        CHECK(canonical_signature(GluingDescription::standard(inventory({3, 4}), swapped)) == sig);
      }
    }
  }
}

TEST_CASE("signatures separate exactly the isomorphism classes") {
  for (auto sides : std::vector<std::vector<int>>{{4}, {3, 3}, {5}}) {
    auto inv = inventory(sides);
    auto group = census_oracle::symmetry_group(sides);
    std::vector<std::vector<int>> reps;
    std::set<std::string> sigs;
    enumerate_gluings(inv, [&](const GluingDescription& g, std::int64_t) {
      auto sig = canonical_signature(g);
      std::string direct = to_string(inv) + ":";
      for (std::size_t f = 0; f < g.partner.size(); ++f) direct += (f ? "." : "") + std::to_string(g.partner[f]);
      CHECK(sig == direct);
      sigs.insert(sig);
      reps.push_back(g.partner);
    });
    CHECK(sigs.size() == reps.size());
    // Backtracking isomorphism test against a sample of pairs.
    auto isomorphic = [&](const std::vector<int>& a, const std::vector<int>& b) {
      for (const auto& sigma : group)
        if (act(sigma, a) == b) return true;
      return false;
    };
    for (std::size_t i = 0; i < reps.size(); i += 3)
      for (std::size_t j = i + 1; j < reps.size(); j += 7) CHECK_FALSE(isomorphic(reps[i], reps[j]));
  }
}

TEST_CASE("census output does not depend on the worker count") {
  const auto reference = format_census(3, census(3));
  for (int workers : {1, 2, 4}) CHECK(format_census(3, run_mom_census(3, {workers, ""})) == reference);
}

TEST_CASE("census checkpoints resume to the same result") {
  const auto inventories = polyhedron_inventories(2);
  const auto fresh = format_census(2, run_census(inventories, {1, ""}));
  auto path = temp_file("ckpt");
  CHECK(format_census(2, run_census(inventories, {2, path.string()})) == fresh);
  CHECK(format_census(2, run_census(inventories, {1, path.string()})) == fresh);

  // Drop the tail mid-branch, as after an interruption.
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  in.close();
  REQUIRE(lines.size() > 6);
  auto last_end = std::find(lines.rbegin() + 1, lines.rend(), "END");
  std::size_t keep = static_cast<std::size_t>(lines.rend() - last_end) + 2;
  {
    std::ofstream out(path, std::ios::trunc);
    for (std::size_t i = 0; i < keep && i < lines.size(); ++i) out << lines[i] << '\n';
  }
  CHECK(format_census(2, run_census(inventories, {1, path.string()})) == fresh);
  std::ifstream again(path);
  std::string last, line;
  while (std::getline(again, line)) last = line;
  CHECK(last == "END");

  {
    std::ofstream out(path, std::ios::trunc);
    out << "not a checkpoint\n";
  }
  CHECK(kind_of([&] { run_census(inventories, {1, path.string()}); }) == ErrorKind::Parse);
  std::filesystem::remove(path);
}

TEST_CASE("census report format") {
  const auto text = format_census(2, census(2));
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("CENSUS mom=2", 0) == 0);
  int gluing_lines = 0;
  while (std::getline(in, line))
    if (line.rfind("GLUING sig=", 0) == 0) ++gluing_lines;
  CHECK(gluing_lines == 44);
  CHECK(text.find("TOTAL") != std::string::npos);
}
