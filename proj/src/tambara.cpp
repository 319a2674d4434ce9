#include "eqalg/tambara.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace eqalg {

namespace {

std::mutex conj_mutex;
std::map<const FiniteGroup*, std::pair<GroupPtr, std::vector<int>>> conj_cache;

// conj[e * ns + id] = id of the e-conjugate subgroup
const std::vector<int>& conj_table(const GroupPtr& g) {
  std::lock_guard<std::mutex> lock(conj_mutex);
  auto it = conj_cache.find(g.get());
  if (it != conj_cache.end()) return it->second.second;
  const auto& lat = g->lattice;
  int ns = lat.num_subgroups();
  std::vector<int> tbl(static_cast<size_t>(g->order) * ns);
  for (int e = 0; e < g->order; ++e)
    for (int i = 0; i < ns; ++i)
      tbl[static_cast<size_t>(e) * ns + i] = lat.id_of(g->conj_mask(e, lat.subgroups[i].mask));
  return conj_cache.emplace(g.get(), std::make_pair(g, std::move(tbl))).first->second.second;
}

std::pair<int, int> j_canonical_pair(const GroupPtr& g, const GSet& source, int j, std::pair<int, int> pr) {
  const auto& tbl = conj_table(g);
  int ns = g->lattice.num_subgroups();
  std::pair<int, int> best{-1, -1};
  for (int n : g->lattice.subgroups[j].elements) {
    std::pair<int, int> cand{tbl[static_cast<size_t>(n) * ns + pr.first], source.act(n, pr.second)};
    if (best.first < 0 || cand < best) best = cand;
  }
  return best;
}

std::vector<int> identity_map(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// least carrier of point 0 to each point of a transitive set
std::vector<int> transversal(const GSet& orbit) {
  std::vector<int> carry(orbit.size, -1);
  for (int g = 0; g < orbit.group->order; ++g) {
    int p = orbit.act(g, 0);
    if (carry[p] < 0) carry[p] = g;
  }
  return carry;
}

void check_middle_admissible(const RawPoly& p, const TransferSystem& o) {
  for (int ob = 0; ob < p.a.num_orbits(); ++ob) {
    int a0 = p.a.orbit_reps[ob];
    int l = p.a.stabilizer_id(a0);
    int j = p.b.stabilizer_id(p.g[a0]);
    if (!o.has(l, j)) throw InadmissibleNorm("middle leg not admissible for the transfer system");
  }
}

}  // namespace

RawPoly r_of(const GMap& f) {
  RawPoly p;
  p.source = f.target;
  p.target = f.source;
  p.a = f.source;
  p.b = f.source;
  p.f = f.f;
  p.g = identity_map(f.source.size);
  p.h = identity_map(f.source.size);
  return p;
}

RawPoly n_of(const GMap& g) {
  RawPoly p;
  p.source = g.source;
  p.target = g.target;
  p.a = g.source;
  p.b = g.target;
  p.f = identity_map(g.source.size);
  p.g = g.f;
  p.h = identity_map(g.target.size);
  return p;
}

RawPoly t_of(const GMap& h) {
  RawPoly p;
  p.source = h.source;
  p.target = h.target;
  p.a = h.source;
  p.b = h.source;
  p.f = identity_map(h.source.size);
  p.g = identity_map(h.source.size);
  p.h = h.f;
  return p;
}

RawPoly zero_poly(const GSet& source, const GSet& target) {
  RawPoly p;
  p.source = source;
  p.target = target;
  p.a = empty_gset(source.group);
  p.b = empty_gset(source.group);
  return p;
}

RawPoly one_poly(const GSet& source, const GSet& target) {
  RawPoly p;
  p.source = source;
  p.target = target;
  p.a = empty_gset(source.group);
  p.b = target;
  p.h = identity_map(target.size);
  return p;
}

PolyClass canonical_class(const GroupPtr& g, const GSet& source, const GSet& target, int j, int y,
                          std::vector<std::pair<int, int>> raw_pairs) {
  const auto& tbl = conj_table(g);
  int ns = g->lattice.num_subgroups();
  PolyClass best;
  for (int e = 0; e < g->order; ++e) {
    PolyClass cand;
    cand.j = tbl[static_cast<size_t>(e) * ns + j];
    cand.y = target.act(e, y);
    if (best.j >= 0 && std::tie(cand.j, cand.y) > std::tie(best.j, best.y)) continue;
    cand.pairs.reserve(raw_pairs.size());
    for (auto [l, w] : raw_pairs)
      cand.pairs.push_back(
          j_canonical_pair(g, source, cand.j, {tbl[static_cast<size_t>(e) * ns + l], source.act(e, w)}));
    std::sort(cand.pairs.begin(), cand.pairs.end());
    if (best.j < 0 || cand < best) best = std::move(cand);
  }
  for (auto [l, w] : best.pairs) {
    (void)w;
    best.exponent_size += g->order / g->lattice.subgroups[l].order;
  }
  return best;
}

PolyVector normalize(const RawPoly& p, const TransferSystem* o) {
  PolyVector out;
  for (int ob = 0; ob < p.b.num_orbits(); ++ob) {
    int b0 = p.b.orbit_reps[ob];
    int j = p.b.stabilizer_id(b0);
    int y = p.h[b0];
    // fiber of the middle leg over the basepoint, as a J-set
    std::vector<int> fiber;
    for (int ap = 0; ap < p.a.size; ++ap)
      if (p.g[ap] == b0) fiber.push_back(ap);
    const auto& jelems = p.source.group->lattice.subgroups[j].elements;
    std::set<int> unseen(fiber.begin(), fiber.end());
    std::vector<std::pair<int, int>> pairs;
    while (!unseen.empty()) {
      int a0 = *unseen.begin();
      std::vector<int> stack = {a0};
      unseen.erase(a0);
      while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (int e : jelems) {
          int r = p.a.act(e, q);
          if (unseen.erase(r)) stack.push_back(r);
        }
      }
      int l = p.a.stabilizer_id(a0);
      if (o && !o->has(l, j)) throw InadmissibleNorm("middle leg not admissible for the transfer system");
      pairs.emplace_back(l, p.f[a0]);
    }
    out[canonical_class(p.source.group, p.source, p.target, j, y, std::move(pairs))] += 1;
  }
  return out;
}

RawPoly realize_class(const GroupPtr& g, const GSet& source, const GSet& target, const PolyClass& c) {
  RawPoly p;
  p.source = source;
  p.target = target;
  p.b = make_orbit(g, c.j);
  auto carry_b = transversal(p.b);
  p.h.resize(p.b.size);
  for (int bp = 0; bp < p.b.size; ++bp) p.h[bp] = target.act(carry_b[bp], c.y);
  std::vector<GSet> orbits;
  for (auto [l, w] : c.pairs) {
    (void)w;
    orbits.push_back(make_orbit(g, l));
  }
  p.a = orbits.empty() ? empty_gset(g) : disjoint_union(orbits);
  int off = 0;
  p.f.resize(p.a.size);
  p.g.resize(p.a.size);
  for (size_t i = 0; i < orbits.size(); ++i) {
    auto carry = transversal(orbits[i]);
    for (int q = 0; q < orbits[i].size; ++q) {
      p.f[off + q] = source.act(carry[q], c.pairs[i].second);
      p.g[off + q] = p.b.act(carry[q], 0);
    }
    off += orbits[i].size;
  }
  return p;
}

PolyVector compose(const RawPoly& second, const RawPoly& first, const TransferSystem* o) {
  if (first.target.size != second.source.size) throw std::invalid_argument("compose: targets do not match");
  if (o) {
    check_middle_admissible(first, *o);
    check_middle_admissible(second, *o);
  }
  GMap h1{first.b, first.target, first.h};
  GMap f2{second.a, second.source, second.f};
  auto pb1 = pullback(h1, f2);  // P1 = B1 x_Y A2
  GMap g1{first.a, first.b, first.g};
  auto pb2 = pullback(g1, pb1.proj_f);  // P2 = A1 x_B1 P1
  GMap g2m{second.a, second.b, second.g};
  auto dp = dependent_product(pb1.proj_g, g2m);  // Pi over B2 of P1 -> A2
  auto pb3 = pullback(pb2.proj_g, dp.f_prime);   // P3 = P2 x_P1 (A2 x_B2 Pi)
  RawPoly out;
  out.source = first.source;
  out.target = second.target;
  out.a = pb3.object;
  out.b = dp.object;
  out.f.resize(out.a.size);
  out.g.resize(out.a.size);
  for (int p = 0; p < out.a.size; ++p) {
    out.f[p] = first.f[pb2.proj_f.f[pb3.proj_f.f[p]]];
    out.g[p] = dp.g_prime.f[pb3.proj_g.f[p]];
  }
  out.h.resize(out.b.size);
  for (int p = 0; p < out.b.size; ++p) out.h[p] = second.h[dp.h_prime.f[p]];
  return normalize(out, o);
}

RawPoly poly_add(const RawPoly& x, const RawPoly& y) {
  RawPoly p;
  p.source = x.source;
  p.target = x.target;
  p.a = disjoint_union({x.a, y.a});
  p.b = disjoint_union({x.b, y.b});
  p.f = x.f;
  p.f.insert(p.f.end(), y.f.begin(), y.f.end());
  p.g = x.g;
  for (int v : y.g) p.g.push_back(v + x.b.size);
  p.h = x.h;
  p.h.insert(p.h.end(), y.h.begin(), y.h.end());
  return p;
}

RawPoly poly_mul(const RawPoly& x, const RawPoly& y) {
  if (x.source.size != y.source.size || x.target.size != y.target.size)
    throw std::invalid_argument("poly_mul: mismatched hom-set");
  // everything mapped down to the common target
  std::vector<int> xa_to_t(x.a.size), ya_to_t(y.a.size);
  for (int p = 0; p < x.a.size; ++p) xa_to_t[p] = x.h[x.g[p]];
  for (int p = 0; p < y.a.size; ++p) ya_to_t[p] = y.h[y.g[p]];
  GMap hxa{x.a, x.target, xa_to_t}, hya{y.a, y.target, ya_to_t};
  GMap hxb{x.b, x.target, x.h}, hyb{y.b, y.target, y.h};
  auto ab = pullback(hxa, hyb);  // A x_Y B'
  auto ba = pullback(hxb, hya);  // B x_Y A'
  auto bb = pullback(hxb, hyb);  // B x_Y B'
  std::map<std::pair<int, int>, int> bb_index;
  for (size_t i = 0; i < bb.points.size(); ++i) bb_index[bb.points[i]] = static_cast<int>(i);
  RawPoly p;
  p.source = x.source;
  p.target = x.target;
  p.a = disjoint_union({ab.object, ba.object});
  p.b = bb.object;
  for (auto& [apt, bpt] : ab.points) {
    p.f.push_back(x.f[apt]);
    p.g.push_back(bb_index.at({x.g[apt], bpt}));
  }
  for (auto& [bpt, apt] : ba.points) {
    p.f.push_back(y.f[apt]);
    p.g.push_back(bb_index.at({bpt, y.g[apt]}));
  }
  for (auto& [b1, b2] : bb.points) {
    (void)b2;
    p.h.push_back(x.h[b1]);
  }
  return p;
}

PolyVector vector_add(const PolyVector& x, const PolyVector& y) {
  PolyVector out = x;
  for (const auto& [c, n] : y) {
    out[c] += n;
    if (out[c] == 0) out.erase(c);
  }
  return out;
}

PolyVector vector_mul(const GroupPtr& g, const GSet& source, const GSet& target, const PolyVector& x,
                      const PolyVector& y, const TransferSystem* o) {
  PolyVector out;
  for (const auto& [cx, nx] : x)
    for (const auto& [cy, ny] : y) {
      auto prod = normalize(poly_mul(realize_class(g, source, target, cx), realize_class(g, source, target, cy)), o);
      for (const auto& [c, n] : prod) {
        out[c] += n * nx * ny;
        if (out[c] == 0) out.erase(c);
      }
    }
  return out;
}

RawPoly transfer_poly(const RawPoly& p, const GMap& j) {
  if (j.source.size != p.target.size) throw std::invalid_argument("transfer_poly: map does not compose");
  RawPoly out = p;
  out.target = j.target;
  for (auto& v : out.h) v = j.f[v];
  return out;
}

RawPoly restrict_poly(const RawPoly& p, const GMap& k) {
  if (k.target.size != p.target.size) throw std::invalid_argument("restrict_poly: map does not compose");
  std::vector<int> a_to_y(p.a.size);
  for (int q = 0; q < p.a.size; ++q) a_to_y[q] = p.h[p.g[q]];
  GMap ha{p.a, p.target, a_to_y};
  GMap hb{p.b, p.target, p.h};
  auto pa = pullback(ha, k);  // A x_Y Z
  auto pb = pullback(hb, k);  // B x_Y Z
  std::map<std::pair<int, int>, int> pb_index;
  for (size_t i = 0; i < pb.points.size(); ++i) pb_index[pb.points[i]] = static_cast<int>(i);
  RawPoly out;
  out.source = p.source;
  out.target = k.source;
  out.a = pa.object;
  out.b = pb.object;
  for (auto& [apt, zpt] : pa.points) {
    out.f.push_back(p.f[apt]);
    out.g.push_back(pb_index.at({p.g[apt], zpt}));
  }
  for (auto& [bpt, zpt] : pb.points) {
    (void)bpt;
    out.h.push_back(zpt);
  }
  return out;
}

PolyClass translate_class(const GroupPtr& g, const GSet& source, const GSet& target, const PolyClass& c,
                          const std::vector<int>& target_map) {
  return canonical_class(g, source, target, c.j, target_map[c.y], c.pairs);
}

namespace {

// enumeration core; required_mask constrains the middle stabilizer J
std::vector<PolyClass> poly_basis_impl(const TransferSystem& o, const GSet& source, int level, int max_size,
                                       std::uint64_t required_mask) {
  GroupPtr g = o.group;
  GSet target = make_orbit(g, level);
  const auto& lat = g->lattice;
  std::set<PolyClass> classes;
  for (const auto& jsub : lat.subgroups) {
    if ((required_mask & ~jsub.mask) != 0) continue;
    std::vector<int> ys;
    for (int y = 0; y < target.size; ++y) {
      bool fix = true;
      for (int e : jsub.elements) fix &= target.act(e, y) == y;
      if (fix) ys.push_back(y);
    }
    if (ys.empty()) continue;
    // J-canonical admissible pair types
    std::set<std::pair<int, int>> ptype_set;
    for (const auto& lsub : lat.subgroups) {
      if (!lat.leq[lsub.id][jsub.id] || !o.has(lsub.id, jsub.id)) continue;
      for (int w = 0; w < source.size; ++w) {
        bool fix = true;
        for (int e : lsub.elements) fix &= source.act(e, w) == w;
        if (fix) ptype_set.insert(j_canonical_pair(g, source, jsub.id, {lsub.id, w}));
      }
    }
    std::vector<std::pair<int, int>> ptypes(ptype_set.begin(), ptype_set.end());
    std::vector<int> sizes;
    for (auto& [l, w] : ptypes) {
      (void)w;
      sizes.push_back(g->order / lat.subgroups[l].order);
    }
    for (int y : ys) {
      std::vector<std::pair<int, int>> current;
      std::function<void(size_t, int)> rec = [&](size_t idx, int budget) {
        if (idx == ptypes.size()) {
          classes.insert(canonical_class(g, source, target, jsub.id, y, current));
          return;
        }
        rec(idx + 1, budget);
        int used = 0;
        size_t pushed = 0;
        while (used + sizes[idx] <= budget) {
          used += sizes[idx];
          current.push_back(ptypes[idx]);
          ++pushed;
          rec(idx + 1, budget - used);
        }
        current.resize(current.size() - pushed);
      };
      rec(0, max_size);
    }
  }
  std::vector<PolyClass> out(classes.begin(), classes.end());
  std::stable_sort(out.begin(), out.end(), [](const PolyClass& a, const PolyClass& b) {
    return std::tie(a.exponent_size, a.j, a.y, a.pairs) < std::tie(b.exponent_size, b.j, b.y, b.pairs);
  });
  return out;
}

}  // namespace

std::vector<PolyClass> poly_basis(const TransferSystem& o, const GSet& source, int level, int max_size) {
  return poly_basis_impl(o, source, level, max_size, 0);
}

UnderlyingRingReport underlying_ring_check(const TransferSystem& o, int h_id, int dmax) {
  GroupPtr g = o.group;
  const auto& lat = g->lattice;
  GSet source = make_orbit(g, h_id);
  int e = lat.trivial_id;
  auto basis = poly_basis(o, source, e, dmax * g->order);
  UnderlyingRingReport rep;
  rep.counts.assign(dmax + 1, 0);
  for (const auto& c : basis) {
    if (c.exponent_size % g->order != 0) continue;  // cannot happen at the free level
    int d = c.exponent_size / g->order;
    if (d <= dmax) ++rep.counts[d];
  }
  int m = g->order / lat.subgroups[h_id].order;
  rep.expected.assign(dmax + 1, 0);
  for (int d = 0; d <= dmax; ++d) {
    long long binom = 1;
    for (int i = 0; i < d; ++i) binom = binom * (m + d - 1 - i) / (i + 1);
    rep.expected[d] = binom;
  }
  rep.counts_match = rep.counts == rep.expected;
  // the Weyl action (right translation on G/e) permutes classes
  GSet target = make_orbit(g, e);
  auto carry = transversal(target);
  std::set<PolyClass> all(basis.begin(), basis.end());
  rep.action_permutes = true;
  for (int gamma = 0; gamma < g->order; ++gamma) {
    std::vector<int> cgamma(target.size);
    for (int p = 0; p < target.size; ++p) cgamma[p] = target.act(g->mul(carry[p], gamma), 0);
    for (const auto& c : basis)
      rep.action_permutes &= all.count(translate_class(g, source, target, c, cgamma)) > 0;
  }
  return rep;
}

std::vector<std::pair<int, int>> over_class(const GroupPtr& g, const GSet& y, const OverSet& o) {
  const auto& tbl = conj_table(g);
  int ns = g->lattice.num_subgroups();
  std::vector<std::pair<int, int>> out;
  for (int ob = 0; ob < o.w.num_orbits(); ++ob) {
    int rep = o.w.orbit_reps[ob];
    int l = o.w.stabilizer_id(rep);
    int w = o.u[rep];
    std::pair<int, int> best{-1, -1};
    for (int e = 0; e < g->order; ++e) {
      std::pair<int, int> cand{tbl[static_cast<size_t>(e) * ns + l], y.act(e, w)};
      if (best.first < 0 || cand < best) best = cand;
    }
    out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

OverSet eval_poly(const RawPoly& p, const OverSet& elt) {
  GMap f{p.a, p.source, p.f};
  GMap u{elt.w, p.source, elt.u};
  auto pb = pullback(f, u);  // A x_X W over A
  GMap gmap{p.a, p.b, p.g};
  auto dp = dependent_product(pb.proj_f, gmap);
  OverSet out;
  out.w = dp.object;
  out.u.resize(dp.object.size);
  for (int q = 0; q < dp.object.size; ++q) out.u[q] = p.h[dp.h_prime.f[q]];
  return out;
}

std::vector<std::pair<int, int>> eval_vector_class(const GroupPtr& g, const GSet& source, const GSet& target,
                                                   const PolyVector& v, const OverSet& elt) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [c, n] : v) {
    if (n < 0) throw std::invalid_argument("eval_vector_class: effective expansions only");
    auto ev = eval_poly(realize_class(g, source, target, c), elt);
    auto cls = over_class(g, target, ev);
    for (Int i = 0; i < n; ++i) out.insert(out.end(), cls.begin(), cls.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

GfpTambaraResult gfp_free_tambara(const GroupPtr& g, const TransferSystem& o, const GSet& t, int normal_id,
                                  int grade_bound, int class_cap) {
  const auto& lat = g->lattice;
  if (!o.subset_of(o_gen(g, normal_id)))
    throw std::invalid_argument("gfp_free_tambara: system not contained in the cleaving system");
  GfpTambaraResult res;
  auto fp = fixed_points(t, normal_id);
  res.q = fp.q;
  res.t_fixed_q = fp.q_set;
  auto qo = quotient_along(o, normal_id);
  const auto& qlat = res.q.group->lattice;
  std::uint64_t nmask = lat.subgroups[normal_id].mask;

  res.type_bijection = true;
  std::vector<long long> est_by_grade(grade_bound + 1, 0);
  struct LevelData {
    int hq = -1, h = -1;
    GSet q_target, g_target;
    std::vector<int> level_lift;
  };
  std::vector<LevelData> levels;
  for (int hq = 0; hq < qlat.num_subgroups(); ++hq) {
    LevelData ld;
    ld.hq = hq;
    ld.h = preimage_subgroup_id(*g, res.q, hq);
    ld.q_target = make_orbit(res.q.group, hq);
    ld.g_target = make_orbit(g, ld.h);
    ld.level_lift.assign(ld.q_target.size, -1);
    auto carry = transversal(ld.g_target);
    for (int p = 0; p < ld.g_target.size; ++p) {
      int qp = ld.q_target.act(res.q.project[carry[p]], 0);
      if (ld.level_lift[qp] >= 0 && ld.level_lift[qp] != p) res.type_bijection = false;
      ld.level_lift[qp] = p;
    }
    for (int p : ld.level_lift) res.type_bijection &= p >= 0;
    levels.push_back(std::move(ld));
  }

  for (const auto& ld : levels) {
    for (int jq = 0; jq < qlat.num_subgroups(); ++jq) {
      int j = preimage_subgroup_id(*g, res.q, jq);
      std::vector<int> q_ys, g_ys;
      for (int y = 0; y < ld.q_target.size; ++y) {
        bool fix = true;
        for (int e : qlat.subgroups[jq].elements) fix &= ld.q_target.act(e, y) == y;
        if (fix) q_ys.push_back(y);
      }
      for (int y = 0; y < ld.g_target.size; ++y) {
        bool fix = true;
        for (int e : lat.subgroups[j].elements) fix &= ld.g_target.act(e, y) == y;
        if (fix) g_ys.push_back(y);
      }
      std::vector<int> lifted;
      for (int y : q_ys) lifted.push_back(ld.level_lift[y]);
      std::sort(lifted.begin(), lifted.end());
      res.type_bijection &= lifted == g_ys;
      // pair types on both sides
      std::set<std::pair<int, int>> q_types, g_types, g_types_lifted;
      for (const auto& lsub : qlat.subgroups) {
        if (!qlat.leq[lsub.id][jq] || !qo.has(lsub.id, jq)) continue;
        for (int w = 0; w < res.t_fixed_q.size; ++w) {
          bool fix = true;
          for (int e : lsub.elements) fix &= res.t_fixed_q.act(e, w) == w;
          if (fix) q_types.insert(j_canonical_pair(res.q.group, res.t_fixed_q, jq, {lsub.id, w}));
        }
      }
      for (const auto& lsub : lat.subgroups) {
        if (!lat.leq[lsub.id][j] || !o.has(lsub.id, j)) continue;
        if ((nmask & ~lsub.mask) != 0) continue;  // cannot occur under o <= o_gen(N)
        for (int w = 0; w < t.size; ++w) {
          bool fix = true;
          for (int e : lsub.elements) fix &= t.act(e, w) == w;
          if (fix) g_types.insert(j_canonical_pair(g, t, j, {lsub.id, w}));
        }
      }
      for (auto [lq, wq] : q_types)
        g_types_lifted.insert(j_canonical_pair(g, t, j, {preimage_subgroup_id(*g, res.q, lq), fp.inclusion.f[wq]}));
      res.type_bijection &= g_types_lifted == g_types && q_types.size() == g_types.size();
      // count estimate (no conjugation dedup, so an upper bound)
      std::vector<long long> dp(grade_bound + 1, 0);
      dp[0] = 1;
      for (auto [lq, wq] : q_types) {
        (void)wq;
        int lg = preimage_subgroup_id(*g, res.q, lq);
        int s = g->order / lat.subgroups[lg].order;
        for (int w = s; w <= grade_bound; ++w) dp[w] += dp[w - s];
      }
      for (int w = 0; w <= grade_bound; ++w) est_by_grade[w] += dp[w] * static_cast<long long>(q_ys.size());
    }
  }
  res.grade_used = grade_bound;
  long long estimate = 0;
  for (long long v : est_by_grade) estimate += v;
  while (res.grade_used > 0 && estimate > class_cap) {
    estimate -= est_by_grade[res.grade_used];
    --res.grade_used;
  }

  res.class_bijection = true;
  for (const auto& ld : levels) {
    auto qb = poly_basis(qo, res.t_fixed_q, ld.hq, res.grade_used);
    auto constrained = poly_basis_impl(o, t, ld.h, res.grade_used, nmask);
    std::set<PolyClass> g_side(constrained.begin(), constrained.end());
    std::set<PolyClass> image;
    bool ok = true;
    for (const auto& qc : qb) {
      int j = preimage_subgroup_id(*g, res.q, qc.j);
      int y = ld.level_lift[qc.y];
      std::vector<std::pair<int, int>> pairs;
      for (auto [lq, wq] : qc.pairs) pairs.emplace_back(preimage_subgroup_id(*g, res.q, lq), fp.inclusion.f[wq]);
      auto img = canonical_class(g, t, ld.g_target, j, y, std::move(pairs));
      if (!g_side.count(img) || !image.insert(img).second) {
        ok = false;
        break;
      }
    }
    ok = ok && image.size() == g_side.size();
    res.class_bijection &= ok;
  }
  return res;
}

}  // namespace eqalg
