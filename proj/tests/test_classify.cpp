#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqalg/classify.hpp"
#include "golden_util.hpp"

using namespace eqalg;

namespace {

int find_subgroup(const GroupPtr& g, int order, int nth = 0) {
  int seen = 0;
  for (const auto& s : g->lattice.subgroups)
    if (s.order == order && seen++ == nth) return s.id;
  return -1;
}

}  // namespace

TEST_CASE("decision table") {
  // Free exactly when the three structural conditions hold
  for (int rt = 0; rt < 2; ++rt)
    for (int hn = 0; hn < 2; ++hn)
      for (int adm = 0; adm < 2; ++adm)
        for (int qs = 0; qs < 2; ++qs) {
          auto v = verdict_from_conditions(rt, hn, adm, qs);
          if (rt && hn && adm) {
            CHECK(v == VerdictStatus::Free);
          } else if (!rt || !hn) {
            CHECK(v == VerdictStatus::NotFlat);
          } else if (qs) {
            CHECK(v == VerdictStatus::NotFlat);  // solvable quotient, not admissible
          } else {
            CHECK(v == VerdictStatus::Unknown);
          }
        }
}

TEST_CASE("classification on C_p") {
  auto c3 = build_group("C3");
  auto complete = complete_system(c3);
  CHECK(classify_pair(complete, 0).status == VerdictStatus::Free);
  CHECK(classify_pair(complete, c3->lattice.top_id).status == VerdictStatus::NotFlat);
  auto triv = trivial_system(c3);
  CHECK(classify_pair(triv, c3->lattice.top_id).status == VerdictStatus::Free);
  CHECK(classify_pair(triv, 0).status == VerdictStatus::NotFlat);
}

TEST_CASE("the D6 system with norms to C3 and the conjugate order-2 transfers") {
  auto d6 = build_group("D6");
  int c3 = find_subgroup(d6, 3);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 3; ++i) pairs.emplace_back(0, find_subgroup(d6, 2, i));
  pairs.emplace_back(c3, d6->lattice.top_id);
  auto sys = system_from_pairs(d6, pairs);
  auto v = classify_pair(sys, c3);
  CHECK(v.status == VerdictStatus::Free);
  CHECK(v.restriction_trivial);
  CHECK(v.h_normal);
  CHECK(v.gh_admissible);
  // nowhere else
  for (int h = 0; h < d6->lattice.num_subgroups(); ++h)
    if (h != c3) CHECK(classify_pair(sys, h).status != VerdictStatus::Free);
}

TEST_CASE("stats of the appendix groups") {
  auto check = [](const char* spec, long long n, long long t, long long p, int d) {
    auto st = group_stats(build_group(spec));
    CHECK_MESSAGE(st.n == n, spec);
    CHECK_MESSAGE(st.t == t, spec);
    CHECK_MESSAGE(st.p == p, spec);
    CHECK_MESSAGE(st.d == d, spec);
    CHECK_MESSAGE(st.depth_bound_holds, spec);
  };
  check("C2", 2, 4, 2, 2);
  check("C3", 2, 4, 2, 2);
  check("C4", 5, 15, 4, 3);
  check("C9", 5, 15, 4, 3);
  check("C8", 14, 56, 9, 4);
  check("C6", 10, 40, 7, 3);
  check("C10", 10, 40, 7, 3);
  check("D6", 9, 54, 6, 3);
}

TEST_CASE("appendix tables match the golden files") {
  for (const char* spec : {"C2", "C3", "C4", "C9", "C8", "C6", "C10", "D6"}) {
    auto g = build_group(spec);
    auto table = appendix_table(g);
    auto rows = testing::load_golden(std::string(GOLDEN_DIR) + "/appendix_" + spec + ".csv", *g);
    std::string detail;
    bool ok = testing::appendix_matches_golden(table, rows, &detail);
    CHECK_MESSAGE(ok, spec << ": " << detail);
  }
}

TEST_CASE("at most one free level per system, at the minimal admissible normal subgroup") {
  for (const char* spec : {"C8", "C6", "D6", "Q8", "C2xC2", "C12", "D12"}) {
    auto g = build_group(spec);
    for (const auto& o : enumerate_systems(g)) {
      int free_count = 0;
      for (int h = 0; h < g->lattice.num_subgroups(); ++h) {
        auto v = classify_pair(o, h);
        if (v.status == VerdictStatus::Free) {
          ++free_count;
          CHECK(h == minimal_admissible_normal(o));
          CHECK(v.h_normal);
        }
        // the conjunction forces normality on its own
        if (v.restriction_trivial && v.gh_admissible) CHECK(g->lattice.normal[h]);
      }
      CHECK(free_count <= 1);
    }
  }
}

TEST_CASE("depth bound") {
  for (const char* spec : {"C2", "C4", "C8", "C6", "D6", "Q8", "C2xC2"}) {
    auto st = group_stats(build_group(spec));
    CHECK(st.solvable);
    CHECK(st.p * st.d <= st.t);
  }
}

TEST_CASE("rendering is deterministic and carries the alignment data") {
  auto c4 = build_group("C4");
  auto table = appendix_table(c4);
  auto txt = render_appendix(table, "txt");
  CHECK(txt == render_appendix(appendix_table(c4), "txt"));
  auto csv = render_appendix(table, "csv");
  CHECK(csv.find("C4/e") != std::string::npos);
  CHECK(csv.find("e<C2") != std::string::npos);
  auto md = render_appendix(table, "md");
  CHECK(md.find("| system |") == 0);
}
