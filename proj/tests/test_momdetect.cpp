#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "momtech/error.hpp"
#include "momtech/momdetect.hpp"
#include "oracle.hpp"

using namespace momtech;
using oracle::Real;

namespace {

const Real kSqrt3("1.732050807568877293527446341505872366943");
const Real kHalfSqrt3("0.8660254037844386467637231707529361834714");
const Real kSqrt3Times144("2.494153162899183302679522731768456208398");
const Real kUnionE3("4.021238596594935345231680558376201617981");  // 2 (pi/4) 1.6^2

std::vector<TripleClass> classes(std::vector<std::array<int, 3>> types) {
  std::vector<TripleClass> out;
  for (auto t : types) {
    std::sort(t.begin(), t.end());
    out.push_back({t, {}, 1});
  }
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

CombinatorialMomStructure structure(std::vector<std::array<int, 3>> types) {
  CombinatorialMomStructure s;
  std::set<int> used;
  for (std::size_t k = 0; k < types.size(); ++k) {
    s.triples.push_back(static_cast<int>(k));
    used.insert(types[k].begin(), types[k].end());
  }
  s.types = types;
  s.pair_set.assign(used.begin(), used.end());
  return s;
}

}  // namespace

TEST_CASE("Mom-2 from (1,1,2) and (1,2,2)") {
  auto found = find_mom_structures(classes({{1, 1, 2}, {1, 2, 2}}), 2);
  REQUIRE(found.size() == 1);
  CHECK(found[0].pair_set == std::vector<int>{1, 2});
  CHECK(found[0].triples == std::vector<int>{0, 1});
  CHECK(format_mom(found[0]) == "MOM 2 pairset={1,2} triples=(1,1,2);(1,2,2) torus_friendly=true");
}

TEST_CASE("Mom-3 in the m069-style diagram") {
  auto d = fixtures::m069_diagram();
  auto triples = enumerate_triples(d, ortho_spectrum(d, Interval(2 * std::log(1.5152))));
  auto found = find_mom_structures(triples, 3);
  REQUIRE(found.size() == 1);
  CHECK(found[0].pair_set == std::vector<int>{1, 2, 3});
  CHECK(found[0].types == std::vector<std::array<int, 3>>{{1, 1, 2}, {1, 3, 3}, {2, 2, 3}});
  CHECK(is_torus_friendly(found[0]));
  CHECK(find_mom_structures(triples, 2).empty());
}

TEST_CASE("a single (1,2,3) class supports no Mom structure") {
  for (int n = 1; n <= 3; ++n) CHECK(find_mom_structures(classes({{1, 2, 3}}), n).empty());
  CHECK(kind_of([] { find_mom_structures({}, 0); }) == ErrorKind::Precondition);
}

TEST_CASE("Mom search agrees with brute-force subset enumeration") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> idx(1, 4), count(0, 12);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::array<int, 3>> types(static_cast<std::size_t>(count(rng)));
    for (auto& t : types) t = {idx(rng), idx(rng), idx(rng)};
    auto list = classes(types);
    for (int n : {2, 3}) {
      std::set<std::vector<int>> expected;
      const int m = static_cast<int>(list.size());
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) != n) continue;
        std::set<int> used;
        std::vector<int> members;
        for (int k = 0; k < m; ++k)
          if (mask >> k & 1) {
            members.push_back(k);
            used.insert(list[k].type.begin(), list[k].type.end());
          }
        if (static_cast<int>(used.size()) == n) expected.insert(members);
      }
      auto found = find_mom_structures(list, n);
      std::set<std::vector<int>> got;
      for (const auto& s : found) {
        got.insert(s.triples);
        // Independent re-check of the defining identity.
        std::set<int> used;
        for (int t : s.triples) used.insert(list[t].type.begin(), list[t].type.end());
        CHECK(static_cast<int>(used.size()) == n);
        CHECK(static_cast<int>(s.triples.size()) == n);
        CHECK(std::vector<int>(used.begin(), used.end()) == s.pair_set);
      }
      CHECK(got.size() == found.size());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("torus friendliness") {
  CHECK(!is_torus_friendly(structure({{1, 2, 3}, {1, 2, 3}})));
  CHECK(is_torus_friendly(structure({{1, 1, 2}, {1, 2, 2}})));
  CHECK(is_torus_friendly(structure({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}})));
  CHECK(!is_torus_friendly(structure({{1, 2, 3}, {1, 2, 3}, {1, 1, 3}})));
  CHECK(is_torus_friendly(structure({{1, 1, 2}, {1, 3, 3}, {2, 2, 3}})));
  CHECK(format_mom(structure({{1, 2, 3}, {1, 2, 3}})).ends_with("torus_friendly=false"));
}

TEST_CASE("handle safety thresholds") {
  CHECK(classify_handle_safety(Interval(1.0)) == HandleSafety::Safe);
  CHECK(classify_handle_safety(Interval(1.45)) == HandleSafety::Conditional);
  CHECK(classify_handle_safety(Interval(1.6)) == HandleSafety::Large);
  CHECK(classify_handle_safety(Interval(1.4142135)) == HandleSafety::Safe);
  CHECK(classify_handle_safety(Interval(1.4142136)) == HandleSafety::Conditional);
  CHECK(classify_handle_safety(Interval(1.5151999)) == HandleSafety::Conditional);
  CHECK(classify_handle_safety(Interval(1.5152001)) == HandleSafety::Large);
  CHECK(kind_of([] { classify_handle_safety(Interval(1.5152)); }) == ErrorKind::Uncertifiable);
  CHECK(kind_of([] { classify_handle_safety(Interval(1.4, 1.45)); }) == ErrorKind::Uncertifiable);
  CHECK(kind_of([] { classify_handle_safety(Interval(1.5, 1.6)); }) == ErrorKind::Uncertifiable);
  CHECK(kind_of([] { classify_handle_safety(Interval(0.9)); }) == ErrorKind::Precondition);
}

TEST_CASE("handle safety is monotone") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(1.0, 2.0), w(0, 0.01);
  int compared = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    Interval ea(a, a + w(rng)), eb(b, b + w(rng));
    if (ea.hi() > eb.hi()) continue;
    HandleSafety sa, sb;
    try {
      sa = classify_handle_safety(ea);
      sb = classify_handle_safety(eb);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Uncertifiable);
      continue;
    }
    CHECK(static_cast<int>(sa) <= static_cast<int>(sb));
    ++compared;
  }
  CHECK(compared > 3000);
}

TEST_CASE("area lower bound examples") {
  AreaFlags none;
  AreaFlags facts{true, true, false, false};
  auto base = area_lower_bound(Interval(1.0), Interval(1.0), none);
  CHECK(base.case_tag == AreaCase::Baseline);
  CHECK(oracle::encloses(base.area_lower, kSqrt3));
  CHECK(oracle::encloses(base.volume_lower, kHalfSqrt3));

  auto tangent = area_lower_bound(Interval(1.0), Interval(1.3), facts);
  CHECK(oracle::encloses(tangent.area_lower, kSqrt3));

  auto scaled = area_lower_bound(Interval(1.2), Interval(1.3), facts);
  CHECK(scaled.case_tag == AreaCase::E2Scaled);
  CHECK(oracle::encloses(scaled.area_lower, kSqrt3Times144));
  CHECK(scaled.area_lower.width() < 1e-14);

  auto overlap = area_lower_bound(Interval(1.6), Interval(1.6), {true, true, true, false});
  CHECK(overlap.case_tag == AreaCase::OverlapUnion);
  CHECK(oracle::encloses(overlap.area_lower, kUnionE3));

  auto small = area_lower_bound(Interval(1.05), Interval(1.2), {false, false, false, true});
  CHECK(small.case_tag == AreaCase::SmallE2);
  CHECK(oracle::encloses(small.area_lower, kSqrt3));

  CHECK(format_bound(base).starts_with("BOUND area=[1.73205080756887"));
  CHECK(format_bound(base).ends_with(" case=BASELINE"));
}

TEST_CASE("area lower bound preconditions") {
  AreaFlags none;
  CHECK(kind_of([&] { area_lower_bound(Interval(0.9, 1.1), Interval(1.2), none); }) == ErrorKind::Precondition);
  CHECK(kind_of([&] { area_lower_bound(Interval(1.3), Interval(1.2), none); }) == ErrorKind::Precondition);
  CHECK(kind_of([&] { area_lower_bound(Interval(1.3), Interval(1.4), {false, false, true, false}); }) ==
        ErrorKind::Precondition);
  // Rounding noise just under 1 is tolerated.
  auto r = area_lower_bound(Interval(1.0 - 1e-14, 1.0), Interval(1.2), AreaFlags{true, true, false, false});
  CHECK(r.area_lower.lo() >= 1.7320508);
}

TEST_CASE("area bound is monotone in e2 and volume is half the area") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(1.0, 1.6);
  for (const AreaFlags& flags : {AreaFlags{}, AreaFlags{true, true, false, false}, AreaFlags{true, true, true, false}}) {
    for (int trial = 0; trial < 1000; ++trial) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      Interval e3(1.7);
      auto ra = area_lower_bound(Interval(a), e3, flags);
      auto rb = area_lower_bound(Interval(b), e3, flags);
      CHECK(ra.area_lower.lo() <= rb.area_lower.lo());
      CHECK(ra.volume_lower.overlaps(ra.area_lower / Interval(2.0)));
    }
  }
}

TEST_CASE("lens area against the equal-radius formula") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    double r = u(rng), d = u(rng) * r;
    Interval lens = lens_area(Interval(r), Interval(r), Interval(d));
    Real R(r), D(d);
    Real ref = d >= 2 * r ? Real(0) : 2 * R * R * acos(D / (2 * R)) - D / 2 * sqrt(4 * R * R - D * D);
    CHECK(Real(lens.lo()) - Real("1e-30") <= ref);
    CHECK(ref <= Real(lens.hi()) + Real("1e-30"));
    CHECK(lens.width() < 1e-12);
  }
  CHECK(lens_area(Interval(1.0), Interval(1.0), Interval(2.5)) == Interval(0.0));
  CHECK(oracle::encloses(lens_area(Interval(1.0), Interval(0.25), Interval(0.5)), oracle::pi() / 16));
}
