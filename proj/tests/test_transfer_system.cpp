#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "eqalg/transfer_system.hpp"

using namespace eqalg;

namespace {

int find_subgroup(const GroupPtr& g, int order, int nth = 0) {
  int seen = 0;
  for (const auto& s : g->lattice.subgroups)
    if (s.order == order && seen++ == nth) return s.id;
  return -1;
}

// power-set oracle: count subsets of strict containment pairs whose
// reflexive extension satisfies all four axioms
long long count_systems_oracle(const GroupPtr& g) {
  const auto& lat = g->lattice;
  std::vector<std::pair<int, int>> ground;
  for (int h = 0; h < lat.num_subgroups(); ++h)
    for (int k = 0; k < lat.num_subgroups(); ++k)
      if (k != h && lat.leq[k][h]) ground.emplace_back(k, h);
  const int m = static_cast<int>(ground.size());
  REQUIRE(m <= 24);
  long long count = 0;
  for (long long bits = 0; bits < (1LL << m); ++bits) {
    TransferSystem ts = trivial_system(g);
    for (int i = 0; i < m; ++i)
      if ((bits >> i) & 1) ts.rel[ground[i].second] |= std::uint64_t{1} << ground[i].first;
    if (validate(ts).ok) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("validation of canonical systems") {
  for (const char* spec : {"C4", "C6", "D6", "Q8"}) {
    auto g = build_group(spec);
    CHECK(validate(trivial_system(g)).ok);
    CHECK(validate(complete_system(g)).ok);
    for (const auto& s : g->lattice.subgroups)
      if (g->lattice.normal[s.id]) CHECK(validate(o_gen(g, s.id)).ok);
  }
}

TEST_CASE("restriction-closure violation is caught with a witness") {
  auto c9 = build_group("C9");
  int e = 0, cp = find_subgroup(c9, 3), g_id = c9->lattice.top_id;
  TransferSystem ts = trivial_system(c9);
  ts.rel[g_id] |= std::uint64_t{1} << e;  // (e, C9) without (e, C3)
  auto res = validate(ts);
  CHECK_FALSE(res.ok);
  CHECK(res.axiom == "restriction");
  CHECK(res.witness == std::make_pair(e, g_id));
  (void)cp;
}

TEST_CASE("malformed pairs are rejected") {
  auto c4 = build_group("C4");
  CHECK_THROWS(system_from_pairs(c4, {{0, 99}}));
  CHECK_THROWS(system_from_pairs(c4, {{0, c4->lattice.top_id}}));  // not closed
}

TEST_CASE("o_gen at the extremes") {
  auto c4 = build_group("C4");
  CHECK(o_gen(c4, 0) == complete_system(c4));  // N = e
  // N = G: (K,H) allowed iff H != G, plus (G,G)
  auto top = o_gen(c4, c4->lattice.top_id);
  CHECK(validate(top).ok);
  int g_id = c4->lattice.top_id;
  for (int k = 0; k < g_id; ++k) CHECK_FALSE(top.has(k, g_id));
  for (int h = 0; h < g_id; ++h)
    for (int k = 0; k <= h; ++k)
      if (c4->lattice.leq[k][h]) CHECK(top.has(k, h));
}

TEST_CASE("trivial system of C_p") {
  auto c3 = build_group("C3");
  auto ts = trivial_system(c3);
  CHECK(ts.strict_pairs().empty());
  CHECK(ts.has(0, 0));
  CHECK(ts.has(1, 1));
  CHECK_FALSE(ts.has(0, 1));
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_systems(build_group("C2")).size() == 2);
  CHECK(enumerate_systems(build_group("C3")).size() == 2);
  CHECK(enumerate_systems(build_group("C4")).size() == 5);
  CHECK(enumerate_systems(build_group("C9")).size() == 5);
  CHECK(enumerate_systems(build_group("C8")).size() == 14);
  CHECK(enumerate_systems(build_group("C6")).size() == 10);
  CHECK(enumerate_systems(build_group("D6")).size() == 9);
}

TEST_CASE("enumeration agrees with the power-set oracle") {
  for (const char* spec : {"C2", "C4", "C8", "C6", "C2xC2", "D6", "Q8"}) {
    auto g = build_group(spec);
    auto systems = enumerate_systems(g);
    CHECK_MESSAGE(static_cast<long long>(systems.size()) == count_systems_oracle(g), spec);
  }
}

TEST_CASE("enumeration output properties") {
  for (const char* spec : {"C8", "C6", "D6", "C2xC2"}) {
    auto g = build_group(spec);
    auto systems = enumerate_systems(g);
    std::set<std::vector<std::uint64_t>> seen;
    for (const auto& ts : systems) {
      CHECK(validate(ts).ok);
      CHECK(seen.insert(ts.rel).second);  // pairwise distinct
    }
    CHECK(systems.front() == trivial_system(g));
    CHECK(systems.back() == complete_system(g));
    // closed under pairwise intersection
    for (const auto& a : systems)
      for (const auto& b : systems) CHECK(seen.count(intersect(a, b).rel));
    // sorted by relation bitset
    for (size_t i = 1; i < systems.size(); ++i) CHECK(systems[i - 1].rel < systems[i].rel);
  }
}

TEST_CASE("restriction") {
  auto c9 = build_group("C9");
  int c3 = find_subgroup(c9, 3);
  auto complete9 = complete_system(c9);
  auto r = restrict_to(complete9, c3);
  CHECK(r == complete_system(r.group));
  auto t = restrict_to(trivial_system(c9), c3);
  CHECK(t == trivial_system(t.group));
  // the C_{p^2} system with only (e, C_p) restricts to the complete C_p system
  auto ts = closure_system(c9, {{0, c3}});
  CHECK(ts.strict_pairs() == std::vector<std::pair<int, int>>{{0, c3}});
  auto rt = restrict_to(ts, c3);
  CHECK(rt == complete_system(rt.group));
}

TEST_CASE("restriction composes") {
  auto c8 = build_group("C8");
  int c4 = find_subgroup(c8, 4), c2 = find_subgroup(c8, 2);
  for (const auto& ts : enumerate_systems(c8)) {
    auto r4 = restrict_to(ts, c4);
    CHECK(validate(r4).ok);
    int c2_in_c4 = -1;
    for (const auto& s : r4.group->lattice.subgroups)
      if (s.order == 2) c2_in_c4 = s.id;
    auto r2a = restrict_to(r4, c2_in_c4);
    auto r2b = restrict_to(ts, c2);
    CHECK(r2a.rel == r2b.rel);
  }
}

TEST_CASE("quotient") {
  auto c9 = build_group("C9");
  int c3 = find_subgroup(c9, 3);
  auto qc = quotient_along(complete_system(c9), c3);
  CHECK(qc == complete_system(qc.group));
  auto qt = quotient_along(trivial_system(c9), c3);
  CHECK(qt == trivial_system(qt.group));
  // O = {(C_p, C_{p^2})} + diagonal, N = C_p: the quotient is complete
  auto ts = closure_system(c9, {{c3, c9->lattice.top_id}});
  auto q = quotient_along(ts, c3);
  CHECK(q == complete_system(q.group));
}

TEST_CASE("trivial restriction along N implies containment in o_gen(N)") {
  for (const char* spec : {"C4", "C6", "D6", "Q8"}) {
    auto g = build_group(spec);
    auto systems = enumerate_systems(g);
    for (const auto& ts : systems)
      for (const auto& s : g->lattice.subgroups) {
        if (!g->lattice.normal[s.id]) continue;
        if (!restriction_is_trivial(ts, s.id)) continue;
        auto og = o_gen(g, s.id);
        CHECK(intersect(ts, og) == ts);
        CHECK(validate(quotient_along(ts, s.id)).ok);
      }
  }
}

TEST_CASE("admissibility suite") {
  auto c3 = build_group("C3");
  CHECK(minimal_admissible_normal(complete_system(c3)) == c3->lattice.trivial_id);
  CHECK(minimal_admissible_normal(trivial_system(c3)) == c3->lattice.top_id);
  auto fam = family_f(trivial_system(c3));
  CHECK(fam == std::vector<int>{c3->lattice.trivial_id});
  auto d6 = build_group("D6");
  for (const auto& ts : enumerate_systems(d6)) {
    CHECK_NOTHROW(family_f(ts));
    CHECK_NOTHROW(minimal_admissible_normal(ts));
  }
}

TEST_CASE("json round trip") {
  auto d6 = build_group("D6");
  for (const auto& ts : enumerate_systems(d6)) {
    auto ts2 = system_from_json(d6, system_to_json(ts));
    CHECK(ts2 == ts);
  }
}
