#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "eqalg/group.hpp"

using namespace eqalg;

namespace {

// Brute-force subgroup scan: every subset containing the identity that is
// closed under multiplication.
std::set<std::uint64_t> subgroup_masks_oracle(const FiniteGroup& g) {
  std::set<std::uint64_t> out;
  const int n = g.order;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); m += 2) {
    bool closed = true;
    for (int a = 0; a < n && closed; ++a) {
      if (!((m >> a) & 1u)) continue;
      for (int b = 0; b < n && closed; ++b) {
        if (!((m >> b) & 1u)) continue;
        closed = ((m >> g.mul(a, b)) & 1u) != 0;
      }
    }
    if (closed) out.insert(m);
  }
  return out;
}

}  // namespace

TEST_CASE("cyclic group construction") {
  auto g = build_group("C4");
  CHECK(g->order == 4);
  // element 1 generates
  int x = 1, n = 1;
  while (x != 0) {
    x = g->mul(x, 1);
    ++n;
  }
  CHECK(n == 4);
  CHECK(g->lattice.num_subgroups() == 3);
  CHECK(g->lattice.depth == 3);
}

TEST_CASE("D6 has the expected subgroup structure") {
  auto g = build_group("D6");
  CHECK(g->order == 6);
  const auto& lat = g->lattice;
  CHECK(lat.num_subgroups() == 6);
  CHECK(lat.num_classes() == 4);
  CHECK(lat.depth == 3);
  int order2 = 0, order3 = 0;
  for (const auto& s : lat.subgroups) {
    if (s.order == 2) ++order2;
    if (s.order == 3) ++order3;
  }
  CHECK(order2 == 3);
  CHECK(order3 == 1);
  // the three order-2 subgroups are conjugate
  std::set<int> classes2;
  for (const auto& s : lat.subgroups)
    if (s.order == 2) classes2.insert(lat.conj_class[s.id]);
  CHECK(classes2.size() == 1);
  // C3 is normal, the order-2 subgroups are not
  for (const auto& s : lat.subgroups) {
    if (s.order == 3) CHECK(lat.normal[s.id]);
    if (s.order == 2) CHECK_FALSE(lat.normal[s.id]);
  }
}

TEST_CASE("Klein group subgroup count matches brute force") {
  auto g = build_group("C2xC2");
  CHECK(g->order == 4);
  CHECK(g->lattice.num_subgroups() == 5);
  auto oracle = subgroup_masks_oracle(*g);
  CHECK(oracle.size() == 5);
  std::set<std::uint64_t> ours;
  for (const auto& s : g->lattice.subgroups) ours.insert(s.mask);
  CHECK(ours == oracle);
}

TEST_CASE("lattices agree with brute force on small groups") {
  for (const char* spec : {"C2", "C3", "C6", "C8", "D6", "D8", "Q8", "C2xC2xC2", "C12"}) {
    auto g = build_group(spec);
    auto oracle = subgroup_masks_oracle(*g);
    std::set<std::uint64_t> ours;
    for (const auto& s : g->lattice.subgroups) ours.insert(s.mask);
    CHECK_MESSAGE(ours == oracle, spec);
  }
}

TEST_CASE("prime power chains") {
  auto c3 = build_group("C3");
  CHECK(c3->lattice.num_subgroups() == 2);
  CHECK(c3->lattice.depth == 2);
  auto c27 = build_group("C27");
  CHECK(c27->lattice.num_subgroups() == 4);
  CHECK(c27->lattice.depth == 4);
  auto c8 = build_group("C8");
  CHECK(c8->lattice.num_subgroups() == 4);
  CHECK(c8->lattice.depth == 4);
}

TEST_CASE("conjugation is an orbit partition of the subgroup list") {
  auto g = build_group("D8");
  const auto& lat = g->lattice;
  for (const auto& s : lat.subgroups) {
    std::set<int> orbit;
    for (int e = 0; e < g->order; ++e) orbit.insert(lat.id_of(g->conj_mask(e, s.mask)));
    std::set<int> cls(lat.classes[lat.conj_class[s.id]].begin(), lat.classes[lat.conj_class[s.id]].end());
    CHECK(orbit == cls);
  }
}

TEST_CASE("quotient groups") {
  auto c4 = build_group("C4");
  int c2_id = -1;
  for (const auto& s : c4->lattice.subgroups)
    if (s.order == 2) c2_id = s.id;
  auto q = quotient_group(c4, c2_id);
  CHECK(q.group->order == 2);
  int kernel = 0;
  for (int e = 0; e < 4; ++e) kernel += q.project[e] == 0;
  CHECK(kernel == 2);

  auto d6 = build_group("D6");
  int c3_id = -1;
  for (const auto& s : d6->lattice.subgroups)
    if (s.order == 3) c3_id = s.id;
  auto q2 = quotient_group(d6, c3_id);
  CHECK(q2.group->order == 2);

  auto qq = quotient_group(d6, d6->lattice.top_id);
  CHECK(qq.group->order == 1);

  // coset multiplication table oracle for D6 / C3
  const auto& c3 = d6->lattice.subgroups[c3_id];
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int lhs = q2.project[d6->mul(a, b)];
      int rhs = q2.group->mul(q2.project[a], q2.project[b]);
      CHECK(lhs == rhs);
    }
  CHECK(c3.order == 3);
}

TEST_CASE("quotient by non-normal subgroup is rejected") {
  auto d6 = build_group("D6");
  int h = -1;
  for (const auto& s : d6->lattice.subgroups)
    if (s.order == 2) h = s.id;
  CHECK_THROWS(quotient_group(d6, h));
}

TEST_CASE("quotient lattice counts subgroups above the kernel") {
  for (const char* spec : {"C8", "D8", "Q8", "C12"}) {
    auto g = build_group(spec);
    for (const auto& s : g->lattice.subgroups) {
      if (!g->lattice.normal[s.id]) continue;
      auto q = quotient_group(g, s.id);
      int above = 0;
      for (const auto& t : g->lattice.subgroups) above += g->lattice.leq[s.id][t.id];
      CHECK(q.group->lattice.num_subgroups() == above);
    }
  }
}

TEST_CASE("solvability") {
  CHECK(is_solvable(*build_group("D6")));
  CHECK(is_solvable(*build_group("C27")));
  CHECK(is_solvable(*build_group("Q8")));
  auto s4 = build_group("S4");
  CHECK(s4->order == 24);
  CHECK(is_solvable(*s4));
  // derived series S4 > A4 > V4 > e by brute force
  auto commutator = [&](std::uint64_t m) {
    std::uint64_t seed = 1;
    for (int a = 0; a < 24; ++a)
      for (int b = 0; b < 24; ++b)
        if (((m >> a) & 1u) && ((m >> b) & 1u))
          seed |= std::uint64_t{1} << s4->mul(s4->mul(a, b), s4->mul(s4->inv(a), s4->inv(b)));
    // close under multiplication
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < 24; ++a)
        for (int b = 0; b < 24; ++b)
          if (((seed >> a) & 1u) && ((seed >> b) & 1u)) {
            int c = s4->mul(a, b);
            if (!((seed >> c) & 1u)) {
              seed |= std::uint64_t{1} << c;
              grew = true;
            }
          }
    }
    return seed;
  };
  std::uint64_t full = (std::uint64_t{1} << 24) - 1;
  std::uint64_t d1 = commutator(full);
  std::uint64_t d2 = commutator(d1);
  std::uint64_t d3 = commutator(d2);
  CHECK(__builtin_popcountll(d1) == 12);
  CHECK(__builtin_popcountll(d2) == 4);
  CHECK(d3 == 1u);
}

TEST_CASE("depth is at least 2 and relabel-invariant") {
  for (const char* spec : {"C2", "C6", "D6", "Q8"}) {
    auto g = build_group(spec);
    CHECK(g->lattice.depth >= 2);
    // relabel by conjugating the table with a permutation that fixes 0
    std::vector<int> perm(g->order);
    for (int i = 0; i < g->order; ++i) perm[i] = i == 0 ? 0 : (i % (g->order - 1)) + 1;
    std::vector<int> inv(g->order);
    for (int i = 0; i < g->order; ++i) inv[perm[i]] = i;
    std::vector<int> mul(g->order * g->order);
    for (int a = 0; a < g->order; ++a)
      for (int b = 0; b < g->order; ++b)
        mul[a * g->order + b] = perm[g->mul(inv[a], inv[b])];
    auto g2 = FiniteGroup::from_table("relabeled", std::move(mul));
    CHECK(g2->lattice.depth == g->lattice.depth);
  }
}

TEST_CASE("descriptor errors") {
  CHECK_THROWS(build_group("S5"));
  CHECK_THROWS(build_group("D7"));
  CHECK_THROWS(build_group("Z4"));
  CHECK_THROWS(build_group("C"));
  CHECK_THROWS(build_group("C4x"));
  CHECK_THROWS(build_group("C100"));
}

TEST_CASE("serialization round trip") {
  auto g = build_group("D8");
  auto g2 = group_from_text(group_to_text(*g));
  CHECK(g2->name == g->name);
  CHECK(g2->order == g->order);
  CHECK(g2->mul_table() == g->mul_table());
}

TEST_CASE("subgroup groups agree across nesting") {
  auto g = build_group("D12");
  const auto& lat = g->lattice;
  // pick H of order 6, K of order 2 inside it
  for (const auto& h : lat.subgroups) {
    if (h.order != 6) continue;
    auto hg = as_group(g, h.id);
    for (const auto& k : lat.subgroups) {
      if (k.order != 2 || !lat.leq[k.id][h.id]) continue;
      int klocal = local_subgroup_id(*g, h.id, hg, k.id);
      auto via_h = as_group(hg.group, klocal);
      auto direct = as_group(g, k.id);
      CHECK(via_h.group->mul_table() == direct.group->mul_table());
      // embeddings land on the same ambient elements
      std::vector<int> through;
      for (int e : via_h.embed) through.push_back(hg.embed[e]);
      CHECK(through == direct.embed);
    }
  }
}

TEST_CASE("subgroup labels are deterministic") {
  auto d6 = build_group("D6");
  auto labels = subgroup_labels(*d6);
  CHECK(labels[0] == "e");
  CHECK(labels.back() == "D6");
  int c2 = 0, c3 = 0;
  for (const auto& l : labels) {
    if (l.rfind("C2_", 0) == 0) ++c2;
    if (l == "C3") ++c3;
  }
  CHECK(c2 == 3);
  CHECK(c3 == 1);
}
