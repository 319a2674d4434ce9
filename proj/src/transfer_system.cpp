#include "eqalg/transfer_system.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace eqalg {

namespace {

// per-group tables used by closure and validation
struct LatticeOps {
  int ns = 0;
  std::vector<int> conj;   // conj[g * ns + id] = id of g H g^-1
  std::vector<int> meet;   // meet[a * ns + b] = id of intersection
  std::vector<std::uint64_t> diag;

  explicit LatticeOps(const FiniteGroup& g) {
    const auto& lat = g.lattice;
    ns = lat.num_subgroups();
    conj.resize(static_cast<size_t>(g.order) * ns);
    for (int e = 0; e < g.order; ++e)
      for (int i = 0; i < ns; ++i) conj[static_cast<size_t>(e) * ns + i] = lat.id_of(g.conj_mask(e, lat.subgroups[i].mask));
    meet.resize(static_cast<size_t>(ns) * ns);
    for (int a = 0; a < ns; ++a)
      for (int b = 0; b < ns; ++b)
        meet[static_cast<size_t>(a) * ns + b] = lat.id_of(lat.subgroups[a].mask & lat.subgroups[b].mask);
    diag.resize(ns);
    for (int i = 0; i < ns; ++i) diag[i] = std::uint64_t{1} << i;
  }
};

void close_rel(const FiniteGroup& g, const LatticeOps& ops, std::vector<std::uint64_t>& rel) {
  const auto& lat = g.lattice;
  const int ns = ops.ns;
  for (int h = 0; h < ns; ++h) rel[h] |= ops.diag[h];
  // worklist over newly added strict pairs
  std::vector<std::pair<int, int>> work;
  for (int h = 0; h < ns; ++h) {
    std::uint64_t ks = rel[h] & ~ops.diag[h];
    while (ks) {
      int k = __builtin_ctzll(ks);
      ks &= ks - 1;
      work.emplace_back(k, h);
    }
  }
  auto push = [&](int k, int h) {
    if ((rel[h] >> k) & 1u) return;
    rel[h] |= std::uint64_t{1} << k;
    work.emplace_back(k, h);
  };
  while (!work.empty()) {
    auto [k, h] = work.back();
    work.pop_back();
    // conjugation
    for (int e = 1; e < g.order; ++e)
      push(ops.conj[static_cast<size_t>(e) * ns + k], ops.conj[static_cast<size_t>(e) * ns + h]);
    // restriction: for l <= h, add (k ∩ l, l)
    for (int l = 0; l < ns; ++l)
      if (lat.leq[l][h]) push(ops.meet[static_cast<size_t>(k) * ns + l], l);
    // transitivity in both directions
    for (int l = 0; l < ns; ++l) {
      if ((rel[l] >> h) & 1u) push(k, l);  // (k,h) then (h,l)
      if ((rel[k] >> l) & 1u) push(l, h);  // (l,k) then (k,h)
    }
  }
}

}  // namespace

std::vector<std::pair<int, int>> TransferSystem::strict_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int h = 0; h < static_cast<int>(rel.size()); ++h)
    for (int k = 0; k < static_cast<int>(rel.size()); ++k)
      if (k != h && has(k, h)) out.emplace_back(k, h);
  std::sort(out.begin(), out.end());
  return out;
}

bool TransferSystem::subset_of(const TransferSystem& o) const {
  for (size_t h = 0; h < rel.size(); ++h)
    if (rel[h] & ~o.rel[h]) return false;
  return true;
}

ValidationResult validate(const TransferSystem& ts) {
  const auto& g = *ts.group;
  const auto& lat = g.lattice;
  const int ns = lat.num_subgroups();
  LatticeOps ops(g);
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < ns; ++k) {
      if (!ts.has(k, h)) continue;
      if (!lat.leq[k][h]) return {false, "containment", {k, h}};
    }
  for (int h = 0; h < ns; ++h)
    if (!ts.has(h, h)) return {false, "reflexive", {h, h}};
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < ns; ++k) {
      if (!ts.has(k, h) || k == h) continue;
      for (int l = 0; l < ns; ++l)
        if (ts.has(h, l) && !ts.has(k, l)) return {false, "transitive", {k, h}};
    }
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < ns; ++k) {
      if (!ts.has(k, h) || k == h) continue;
      for (int e = 1; e < g.order; ++e) {
        int kc = ops.conj[static_cast<size_t>(e) * ns + k];
        int hc = ops.conj[static_cast<size_t>(e) * ns + h];
        if (!ts.has(kc, hc)) return {false, "conjugation", {k, h}};
      }
    }
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < ns; ++k) {
      if (!ts.has(k, h) || k == h) continue;
      for (int l = 0; l < ns; ++l) {
        if (!lat.leq[l][h]) continue;
        int kl = ops.meet[static_cast<size_t>(k) * ns + l];
        if (!ts.has(kl, l)) return {false, "restriction", {k, h}};
      }
    }
  return {};
}

TransferSystem trivial_system(const GroupPtr& g) {
  TransferSystem ts;
  ts.group = g;
  int ns = g->lattice.num_subgroups();
  ts.rel.assign(ns, 0);
  for (int h = 0; h < ns; ++h) ts.rel[h] = std::uint64_t{1} << h;
  return ts;
}

TransferSystem complete_system(const GroupPtr& g) {
  TransferSystem ts;
  ts.group = g;
  int ns = g->lattice.num_subgroups();
  ts.rel.assign(ns, 0);
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < ns; ++k)
      if (g->lattice.leq[k][h]) ts.rel[h] |= std::uint64_t{1} << k;
  return ts;
}

TransferSystem o_gen(const GroupPtr& g, int normal_id) {
  const auto& lat = g->lattice;
  if (!lat.normal.at(normal_id)) throw std::invalid_argument("o_gen needs a normal subgroup");
  TransferSystem ts;
  ts.group = g;
  int ns = lat.num_subgroups();
  ts.rel.assign(ns, 0);
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < ns; ++k) {
      if (!lat.leq[k][h]) continue;
      bool n_in_k = lat.leq[normal_id][k];
      bool n_in_h = lat.leq[normal_id][h];
      if (n_in_k || !n_in_h) ts.rel[h] |= std::uint64_t{1} << k;
    }
  return ts;
}

TransferSystem system_from_pairs(const GroupPtr& g, const std::vector<std::pair<int, int>>& pairs) {
  int ns = g->lattice.num_subgroups();
  TransferSystem ts = trivial_system(g);
  for (auto [k, h] : pairs) {
    if (k < 0 || k >= ns || h < 0 || h >= ns) throw std::invalid_argument("malformed pair reference");
    ts.rel[h] |= std::uint64_t{1} << k;
  }
  auto res = validate(ts);
  if (!res.ok) throw std::invalid_argument("pairs do not form a transfer system (" + res.axiom + ")");
  return ts;
}

TransferSystem closure_system(const GroupPtr& g, const std::vector<std::pair<int, int>>& pairs) {
  int ns = g->lattice.num_subgroups();
  TransferSystem ts = trivial_system(g);
  for (auto [k, h] : pairs) {
    if (k < 0 || k >= ns || h < 0 || h >= ns) throw std::invalid_argument("malformed pair reference");
    if (!g->lattice.leq[k][h]) throw std::invalid_argument("pair is not a containment");
    ts.rel[h] |= std::uint64_t{1} << k;
  }
  LatticeOps ops(*g);
  close_rel(*g, ops, ts.rel);
  return ts;
}

std::vector<TransferSystem> enumerate_systems(const GroupPtr& g) {
  const auto& lat = g->lattice;
  const int ns = lat.num_subgroups();
  LatticeOps ops(*g);
  std::vector<std::pair<int, int>> ground;  // strict containments
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < ns; ++k)
      if (k != h && lat.leq[k][h]) ground.emplace_back(k, h);
  std::sort(ground.begin(), ground.end());
  const int m = static_cast<int>(ground.size());

  auto to_rel = [&](const std::vector<char>& bits) {
    std::vector<std::uint64_t> rel(ns, 0);
    for (int h = 0; h < ns; ++h) rel[h] = std::uint64_t{1} << h;
    for (int i = 0; i < m; ++i)
      if (bits[i]) rel[ground[i].second] |= std::uint64_t{1} << ground[i].first;
    return rel;
  };
  auto to_bits = [&](const std::vector<std::uint64_t>& rel) {
    std::vector<char> bits(m, 0);
    for (int i = 0; i < m; ++i) bits[i] = (rel[ground[i].second] >> ground[i].first) & 1u;
    return bits;
  };
  auto close_bits = [&](std::vector<char> bits) {
    auto rel = to_rel(bits);
    close_rel(*g, ops, rel);
    return to_bits(rel);
  };

  // Ganter next-closure over the closure operator on strict pairs
  std::vector<std::vector<char>> closed;
  std::vector<char> a = close_bits(std::vector<char>(m, 0));
  closed.push_back(a);
  while (true) {
    bool advanced = false;
    for (int i = m - 1; i >= 0; --i) {
      if (a[i]) {
        a[i] = 0;
        continue;
      }
      std::vector<char> cand = a;
      cand[i] = 1;
      std::vector<char> b = close_bits(cand);
      bool lectic_ok = true;
      for (int j = 0; j < i && lectic_ok; ++j) lectic_ok = !(b[j] && !a[j]);
      if (lectic_ok) {
        a = b;
        closed.push_back(a);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }

  std::vector<TransferSystem> out;
  out.reserve(closed.size());
  for (auto& bits : closed) {
    TransferSystem ts;
    ts.group = g;
    ts.rel = to_rel(bits);
    out.push_back(std::move(ts));
  }
  std::sort(out.begin(), out.end(), [](const TransferSystem& x, const TransferSystem& y) { return x.rel < y.rel; });
  return out;
}

TransferSystem intersect(const TransferSystem& a, const TransferSystem& b) {
  TransferSystem ts = a;
  for (size_t h = 0; h < ts.rel.size(); ++h) ts.rel[h] &= b.rel[h];
  return ts;
}

TransferSystem restrict_to(const TransferSystem& ts, int h_id) {
  auto hg = as_group(ts.group, h_id);
  const auto& glat = ts.group->lattice;
  const auto& hlat = hg.group->lattice;
  TransferSystem out;
  out.group = hg.group;
  out.rel.assign(hlat.num_subgroups(), 0);
  for (int l = 0; l < hlat.num_subgroups(); ++l) out.rel[l] = std::uint64_t{1} << l;
  // identify subgroups of H with ambient subgroups contained in h_id
  std::vector<int> ambient_of(hlat.num_subgroups(), -1);
  for (int l = 0; l < hlat.num_subgroups(); ++l) {
    std::uint64_t mask = 0;
    for (int e : hlat.subgroups[l].elements) mask |= std::uint64_t{1} << hg.embed[e];
    ambient_of[l] = glat.id_of(mask);
  }
  for (int l = 0; l < hlat.num_subgroups(); ++l)
    for (int k = 0; k < hlat.num_subgroups(); ++k)
      if (hlat.leq[k][l] && ts.has(ambient_of[k], ambient_of[l])) out.rel[l] |= std::uint64_t{1} << k;
  return out;
}

bool restriction_is_trivial(const TransferSystem& ts, int h_id) {
  const auto& lat = ts.group->lattice;
  for (int l = 0; l < lat.num_subgroups(); ++l) {
    if (!lat.leq[l][h_id]) continue;
    if (ts.rel[l] != (std::uint64_t{1} << l)) return false;
  }
  return true;
}

TransferSystem quotient_along(const TransferSystem& ts, int normal_id) {
  auto q = quotient_group(ts.group, normal_id);
  const auto& glat = ts.group->lattice;
  const auto& qlat = q.group->lattice;
  TransferSystem out;
  out.group = q.group;
  out.rel.assign(qlat.num_subgroups(), 0);
  for (int l = 0; l < qlat.num_subgroups(); ++l) out.rel[l] = std::uint64_t{1} << l;
  for (int h = 0; h < glat.num_subgroups(); ++h) {
    if (!glat.leq[normal_id][h]) continue;
    int qh = quotient_subgroup_id(*ts.group, q, h);
    for (int k = 0; k < glat.num_subgroups(); ++k) {
      if (!glat.leq[normal_id][k] || !ts.has(k, h)) continue;
      int qk = quotient_subgroup_id(*ts.group, q, k);
      out.rel[qh] |= std::uint64_t{1} << qk;
    }
  }
  return out;
}

bool is_admissible(const TransferSystem& ts, int k, int h) { return ts.has(k, h); }

std::vector<int> family_f(const TransferSystem& ts) {
  const auto& lat = ts.group->lattice;
  int e = lat.trivial_id;
  std::vector<int> fam;
  for (int h = 0; h < lat.num_subgroups(); ++h)
    if (ts.has(e, h)) fam.push_back(h);
  // family closure checks
  for (int h : fam) {
    for (int k = 0; k < lat.num_subgroups(); ++k)
      if (lat.leq[k][h] && !ts.has(e, k)) throw std::logic_error("family not closed under subgroups");
    for (int g = 0; g < ts.group->order; ++g) {
      int hc = lat.id_of(ts.group->conj_mask(g, lat.subgroups[h].mask));
      if (!ts.has(e, hc)) throw std::logic_error("family not closed under conjugation");
    }
  }
  return fam;
}

int minimal_admissible_normal(const TransferSystem& ts) {
  const auto& lat = ts.group->lattice;
  int top = lat.top_id;
  std::uint64_t meet_mask = lat.subgroups[top].mask;
  for (int h = 0; h < lat.num_subgroups(); ++h)
    if (ts.has(h, top)) meet_mask &= lat.subgroups[h].mask;
  int n = lat.id_of(meet_mask);
  // the meet must itself be admissible, minimal, pulled down through
  // admissibles above it, and normal
  if (!ts.has(n, top)) throw std::logic_error("meet of admissibles is not admissible");
  for (int h = 0; h < lat.num_subgroups(); ++h)
    if (ts.has(h, top) && !lat.leq[n][h]) throw std::logic_error("meet is not minimal");
  for (int h = 0; h < lat.num_subgroups(); ++h) {
    if (!lat.leq[n][h]) continue;
    for (int k = 0; k < lat.num_subgroups(); ++k)
      if (ts.has(k, h) && !lat.leq[n][k]) throw std::logic_error("admissible below contains the meet");
  }
  if (!lat.normal[n]) throw std::logic_error("meet of admissibles is not normal");
  return n;
}

std::string system_to_json(const TransferSystem& ts) {
  nlohmann::json j;
  j["group"] = ts.group->name;
  auto pairs = ts.strict_pairs();
  j["pairs"] = nlohmann::json::array();
  for (auto [k, h] : pairs) j["pairs"].push_back({k, h});
  return j.dump();
}

TransferSystem system_from_json(const GroupPtr& g, const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : j.at("pairs")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  return system_from_pairs(g, pairs);
}

}  // namespace eqalg
