#include "eqalg/mackey.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace eqalg {

namespace {

// least element carrying point 0 of a transitive G-set to each point
std::vector<int> transversal(const GSet& orbit) {
  std::vector<int> carry(orbit.size, -1);
  for (int g = 0; g < orbit.group->order; ++g) {
    int p = orbit.act(g, 0);
    if (carry[p] < 0) carry[p] = g;
  }
  return carry;
}

std::vector<int> fixed_point_list(const GSet& x, const Subgroup& sub) {
  std::vector<int> out;
  for (int p = 0; p < x.size; ++p) {
    bool fix = true;
    for (int e : sub.elements) fix &= x.act(e, p) == p;
    if (fix) out.push_back(p);
  }
  return out;
}

// orbits of a subgroup (by ambient elements) acting on x; returns orbit id per
// point and the least representative per orbit
std::pair<std::vector<int>, std::vector<int>> sub_orbits(const GSet& x, const std::vector<int>& elements) {
  std::vector<int> oid(x.size, -1), reps;
  for (int p = 0; p < x.size; ++p) {
    if (oid[p] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(p);
    std::vector<int> stack = {p};
    oid[p] = id;
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      for (int e : elements) {
        int r = x.act(e, q);
        if (oid[r] < 0) {
          oid[r] = id;
          stack.push_back(r);
        }
      }
    }
  }
  return {std::move(oid), std::move(reps)};
}

}  // namespace

SpanTriple canonical_triple(const GroupPtr& g, const GSet& t, const GSet& level_orbit, int j, int x, int y) {
  const auto& lat = g->lattice;
  SpanTriple best{-1, -1, -1};
  for (int e = 0; e < g->order; ++e) {
    SpanTriple cand{lat.id_of(g->conj_mask(e, lat.subgroups[j].mask)), t.act(e, x), level_orbit.act(e, y)};
    if (best.j < 0 || cand < best) best = cand;
  }
  return best;
}

SpanBasis span_basis(const GroupPtr& g, const GSet& t, int level) {
  SpanBasis sb;
  sb.group = g;
  sb.t = t;
  sb.level = level;
  sb.level_orbit = make_orbit(g, level);
  std::set<SpanTriple> seen;
  const auto& lat = g->lattice;
  for (const auto& sub : lat.subgroups) {
    auto tx = fixed_point_list(t, sub);
    auto ty = fixed_point_list(sb.level_orbit, sub);
    for (int x : tx)
      for (int y : ty) seen.insert(canonical_triple(g, t, sb.level_orbit, sub.id, x, y));
  }
  sb.basis.assign(seen.begin(), seen.end());
  for (size_t i = 0; i < sb.basis.size(); ++i) sb.index[sb.basis[i]] = static_cast<int>(i);
  return sb;
}

int span_rank_by_orbit_count(const GroupPtr& g, const GSet& t, int level) {
  auto orbit = make_orbit(g, level);
  const auto& lat = g->lattice;
  std::map<SpanTriple, int> id;
  std::vector<SpanTriple> raw;
  for (const auto& sub : lat.subgroups) {
    auto tx = fixed_point_list(t, sub);
    auto ty = fixed_point_list(orbit, sub);
    for (int x : tx)
      for (int y : ty) {
        SpanTriple tr{sub.id, x, y};
        id[tr] = static_cast<int>(raw.size());
        raw.push_back(tr);
      }
  }
  // union-find under the translation action
  std::vector<int> parent(raw.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (size_t i = 0; i < raw.size(); ++i)
    for (int e = 0; e < g->order; ++e) {
      SpanTriple img{lat.id_of(g->conj_mask(e, lat.subgroups[raw[i].j].mask)), t.act(e, raw[i].x),
                     orbit.act(e, raw[i].y)};
      int a = find(static_cast<int>(i)), b = find(id.at(img));
      if (a != b) parent[a] = b;
    }
  std::set<int> roots;
  for (size_t i = 0; i < raw.size(); ++i) roots.insert(find(static_cast<int>(i)));
  return static_cast<int>(roots.size());
}

IntMatrix span_tr(const SpanBasis& from, const SpanBasis& to) {
  const auto& lat = from.group->lattice;
  if (!lat.leq[from.level][to.level]) throw std::invalid_argument("span_tr: levels not nested");
  auto carry = transversal(from.level_orbit);
  // projection G/K -> G/H pointwise
  std::vector<int> proj(from.level_orbit.size);
  for (int p = 0; p < from.level_orbit.size; ++p) proj[p] = to.level_orbit.act(carry[p], 0);
  IntMatrix m(to.rank(), from.rank());
  for (int c = 0; c < from.rank(); ++c) {
    const auto& tr = from.basis[c];
    auto img = canonical_triple(from.group, from.t, to.level_orbit, tr.j, tr.x, proj[tr.y]);
    m.at(to.index.at(img), c) += 1;
  }
  return m;
}

IntMatrix span_res(const SpanBasis& from, const SpanBasis& to) {
  const auto& lat = from.group->lattice;
  if (!lat.leq[to.level][from.level]) throw std::invalid_argument("span_res: levels not nested");
  auto g = from.group;
  auto carry_k = transversal(to.level_orbit);
  std::vector<int> proj(to.level_orbit.size);  // G/K -> G/H
  for (int p = 0; p < to.level_orbit.size; ++p) proj[p] = from.level_orbit.act(carry_k[p], 0);
  GMap pi{to.level_orbit, from.level_orbit, proj};
  IntMatrix m(to.rank(), from.rank());
  for (int c = 0; c < from.rank(); ++c) {
    const auto& tr = from.basis[c];
    // realize the span S = G/J with maps to T and G/H
    auto s = make_orbit(g, tr.j);
    auto carry_s = transversal(s);
    std::vector<int> fmap(s.size), hmap(s.size);
    for (int p = 0; p < s.size; ++p) {
      fmap[p] = from.t.act(carry_s[p], tr.x);
      hmap[p] = from.level_orbit.act(carry_s[p], tr.y);
    }
    GMap h{s, from.level_orbit, hmap};
    auto pb = pullback(h, pi);
    for (int o = 0; o < pb.object.num_orbits(); ++o) {
      int rep = pb.object.orbit_reps[o];
      int jj = pb.object.stabilizer_id(rep);
      int xx = fmap[pb.points[rep].first];
      int yy = pb.points[rep].second;
      auto img = canonical_triple(g, from.t, to.level_orbit, jj, xx, yy);
      m.at(to.index.at(img), c) += 1;
    }
  }
  return m;
}

IntMatrix span_conj(const SpanBasis& basis, int gamma) {
  auto g = basis.group;
  const auto& lat = g->lattice;
  // gamma must normalize K so that right translation is equivariant
  if (lat.id_of(g->conj_mask(gamma, lat.subgroups[basis.level].mask)) != basis.level)
    throw std::invalid_argument("span_conj: element does not normalize the level");
  auto carry = transversal(basis.level_orbit);
  std::vector<int> cg(basis.level_orbit.size);
  for (int p = 0; p < basis.level_orbit.size; ++p)
    cg[p] = basis.level_orbit.act(g->mul(carry[p], gamma), 0);
  IntMatrix m(basis.rank(), basis.rank());
  for (int c = 0; c < basis.rank(); ++c) {
    const auto& tr = basis.basis[c];
    auto img = canonical_triple(g, basis.t, basis.level_orbit, tr.j, tr.x, cg[tr.y]);
    m.at(basis.index.at(img), c) += 1;
  }
  return m;
}

IntMatrix span_translate(const SpanBasis& basis, const GMap& u) {
  if (u.source.size != basis.t.size || u.target.size != basis.t.size)
    throw std::invalid_argument("span_translate: map is not an endomorphism of the generator");
  IntMatrix m(basis.rank(), basis.rank());
  for (int c = 0; c < basis.rank(); ++c) {
    const auto& tr = basis.basis[c];
    auto img = canonical_triple(basis.group, basis.t, basis.level_orbit, tr.j, u.f[tr.x], tr.y);
    m.at(basis.index.at(img), c) += 1;
  }
  return m;
}

EfLevels ef_levels(const GroupPtr& g, int normal_id) {
  const auto& lat = g->lattice;
  if (!lat.normal.at(normal_id)) throw std::invalid_argument("ef_levels: normal subgroup required");
  std::uint64_t nmask = lat.subgroups[normal_id].mask;
  EfLevels out;
  out.e_basis.resize(lat.num_subgroups());
  out.etilde_basis.resize(lat.num_subgroups());
  for (int h = 0; h < lat.num_subgroups(); ++h) {
    auto hg = as_group(g, h);
    const auto& hlat = hg.group->lattice;
    for (int c = 0; c < hlat.num_classes(); ++c) {
      const auto& ksub = hlat.subgroups[hlat.class_reps[c]];
      std::uint64_t ambient = 0;
      for (int e : ksub.elements) ambient |= std::uint64_t{1} << hg.embed[e];
      bool contains_n = (nmask & ~ambient) == 0;
      if (contains_n)
        out.etilde_basis[h].push_back(c);
      else
        out.e_basis[h].push_back(c);
    }
  }
  return out;
}

GfpFreeResult gfp_free(const GroupPtr& g, const GSet& t, int normal_id) {
  const auto& lat = g->lattice;
  if (!lat.normal.at(normal_id)) throw std::invalid_argument("gfp_free: normal subgroup required");
  GfpFreeResult out;
  auto fp = fixed_points(t, normal_id);
  out.q = fp.q;
  out.t_fixed_q = fp.q_set;
  const auto& qlat = out.q.group->lattice;
  std::uint64_t nmask = lat.subgroups[normal_id].mask;
  out.bijection = true;
  for (int hq = 0; hq < qlat.num_subgroups(); ++hq) {
    out.q_levels.push_back(hq);
    int h = preimage_subgroup_id(*g, out.q, hq);
    auto gb = span_basis(g, t, h);
    // filtered basis: N <= J
    std::set<SpanTriple> filtered;
    for (const auto& tr : gb.basis)
      if ((nmask & ~lat.subgroups[tr.j].mask) == 0) filtered.insert(tr);
    auto qb = span_basis(out.q.group, out.t_fixed_q, hq);
    out.phi_rank.push_back(static_cast<int>(filtered.size()));
    out.q_rank.push_back(qb.rank());
    // witness: compose each Q-side span with T^N -> T and the level
    // identification Q/(H/N) = G/H
    std::vector<int> level_lift(qb.level_orbit.size, -1);  // Q-level point -> G-level point
    {
      auto proj = out.q.project;
      auto carry = transversal(gb.level_orbit);
      for (int p = 0; p < gb.level_orbit.size; ++p) {
        int qp = qb.level_orbit.act(proj[carry[p]], 0);
        level_lift[qp] = p;
      }
    }
    std::set<SpanTriple> image;
    bool ok = true;
    for (const auto& qt : qb.basis) {
      int j = preimage_subgroup_id(*g, out.q, qt.j);
      int x = fp.inclusion.f[qt.x];
      int y = level_lift[qt.y];
      if (y < 0) {
        ok = false;
        break;
      }
      auto img = canonical_triple(g, t, gb.level_orbit, j, x, y);
      if (!filtered.count(img) || !image.insert(img).second) {
        ok = false;
        break;
      }
    }
    ok = ok && image.size() == filtered.size();
    out.bijection &= ok;
  }
  return out;
}

FpLevels fp_permutation_module(const GroupPtr& g, const GSet& x) {
  FpLevels fp;
  fp.group = g;
  fp.x = x;
  const auto& lat = g->lattice;
  fp.orbit_reps.resize(lat.num_subgroups());
  for (int h = 0; h < lat.num_subgroups(); ++h) fp.orbit_reps[h] = sub_orbits(x, lat.subgroups[h].elements).second;
  return fp;
}

IntMatrix fp_res(const FpLevels& fp, int from_h, int to_k) {
  const auto& lat = fp.group->lattice;
  if (!lat.leq[to_k][from_h]) throw std::invalid_argument("fp_res: levels not nested");
  auto [h_oid, h_reps] = sub_orbits(fp.x, lat.subgroups[from_h].elements);
  auto [k_oid, k_reps] = sub_orbits(fp.x, lat.subgroups[to_k].elements);
  IntMatrix m(static_cast<int>(k_reps.size()), static_cast<int>(h_reps.size()));
  for (size_t k = 0; k < k_reps.size(); ++k) m.at(static_cast<int>(k), h_oid[k_reps[k]]) = 1;
  return m;
}

IntMatrix fp_tr(const FpLevels& fp, int from_k, int to_h) {
  const auto& lat = fp.group->lattice;
  if (!lat.leq[from_k][to_h]) throw std::invalid_argument("fp_tr: levels not nested");
  auto [h_oid, h_reps] = sub_orbits(fp.x, lat.subgroups[to_h].elements);
  auto [k_oid, k_reps] = sub_orbits(fp.x, lat.subgroups[from_k].elements);
  // coset representatives of H/K inside the ambient group
  const auto& hsub = lat.subgroups[to_h];
  const auto& ksub = lat.subgroups[from_k];
  std::vector<int> reps;
  std::set<int> covered;
  for (int e : hsub.elements) {
    if (covered.count(e)) continue;
    reps.push_back(e);
    for (int kk : ksub.elements) covered.insert(fp.group->mul(e, kk));
  }
  IntMatrix m(static_cast<int>(h_reps.size()), static_cast<int>(k_reps.size()));
  for (size_t k = 0; k < k_reps.size(); ++k) {
    std::vector<Int> w(fp.x.size, 0);
    for (int r : reps)
      for (int p = 0; p < fp.x.size; ++p)
        if (k_oid[fp.x.act(fp.group->inv(r), p)] == static_cast<int>(k)) w[p] += 1;
    // w is constant on H-orbits
    for (int p = 0; p < fp.x.size; ++p)
      if (w[p] != w[h_reps[h_oid[p]]]) throw std::logic_error("transfer image not H-invariant");
    for (size_t h = 0; h < h_reps.size(); ++h) m.at(static_cast<int>(h), static_cast<int>(k)) = w[h_reps[h]];
  }
  return m;
}

std::vector<int> inflate_free_ranks(const GroupPtr& g, int normal_id, const GSet& s_over_q) {
  const auto& lat = g->lattice;
  auto q = quotient_group(g, normal_id);
  if (s_over_q.group->order != q.group->order)
    throw std::invalid_argument("inflate_free_ranks: generator is not over the quotient");
  std::vector<int> ranks(lat.num_subgroups(), 0);
  for (int h = 0; h < lat.num_subgroups(); ++h) {
    if (!lat.leq[normal_id][h]) continue;  // zero off the family
    int hq = quotient_subgroup_id(*g, q, h);
    ranks[h] = span_basis(q.group, s_over_q, hq).rank();
  }
  return ranks;
}

std::vector<ZBaseChangeLevel> z_base_change_free(const GroupPtr& g, const GSet& t) {
  const auto& lat = g->lattice;
  auto fp = fp_permutation_module(g, t);
  std::vector<SpanBasis> bases;
  for (int k = 0; k < lat.num_subgroups(); ++k) bases.push_back(span_basis(g, t, k));
  std::vector<ZBaseChangeLevel> out;
  for (int h = 0; h < lat.num_subgroups(); ++h) {
    int n = bases[h].rank();
    // the augmentation-ideal relations form a sub-Mackey functor, so the
    // level-H quotient is by tr_L^H([L:K] x - tr_K^L res_K^L x) over all
    // K < L <= H and x in the L-level basis
    std::set<std::vector<Int>> columns;
    for (int l = 0; l < lat.num_subgroups(); ++l) {
      if (!lat.leq[l][h]) continue;
      IntMatrix up = span_tr(bases[l], bases[h]);
      for (int k = 0; k < lat.num_subgroups(); ++k) {
        if (k == l || !lat.leq[k][l]) continue;
        int index = lat.subgroups[l].order / lat.subgroups[k].order;
        IntMatrix inner = matadd(scale(Int(index), IntMatrix::identity(bases[l].rank())),
                                 scale(Int(-1), matmul(span_tr(bases[k], bases[l]), span_res(bases[l], bases[k]))));
        IntMatrix block = matmul(up, inner);
        for (int j = 0; j < block.cols; ++j) {
          std::vector<Int> col(n);
          bool nonzero = false;
          for (int i = 0; i < n; ++i) {
            col[i] = block.at(i, j);
            nonzero |= col[i] != 0;
          }
          if (nonzero) columns.insert(std::move(col));
        }
      }
    }
    IntMatrix stacked(n, std::max<int>(static_cast<int>(columns.size()), 1));
    int off = 0;
    for (const auto& col : columns) {
      for (int i = 0; i < n; ++i) stacked.at(i, off) = col[i];
      ++off;
    }
    ZBaseChangeLevel lvl;
    lvl.level = h;
    lvl.shape = cokernel_shape(stacked);
    lvl.fp_rank = fp.rank(h);
    lvl.free_of_expected_rank = lvl.shape.torsion.empty() && lvl.shape.free_rank == lvl.fp_rank;
    out.push_back(std::move(lvl));
  }
  return out;
}

CpResolutionReport verify_cp_resolutions(int p) {
  CpResolutionReport rep;
  auto cp = build_group("C" + std::to_string(p));
  int top = cp->lattice.top_id;
  int bot = cp->lattice.trivial_id;

  auto injective = [](const IntMatrix& m) { return rank(m) == m.cols; };
  auto surjective = [](const IntMatrix& m) {
    auto divs = elementary_divisors(m);
    if (static_cast<int>(divs.size()) != m.rows) return false;
    for (const auto& d : divs)
      if (d != 1) return false;
    return true;
  };
  auto zero = [](const IntMatrix& m) {
    for (const auto& v : m.a)
      if (v != 0) return false;
    return true;
  };

  // sequence 1: 0 -> Z* -> A -> (p - t) -> A -> Z -> 0
  // basis of A(C_p/C_p): class 0 = t = [C_p/e], class 1 = 1 = [C_p/C_p]
  auto pmt = add(scale(Rat(p), burnside_one(cp, top)), negate(burnside_basis(cp, top, 0)));
  IntMatrix m_top = multiplication_matrix(pmt);
  IntMatrix m_bot = multiplication_matrix(burnside_res(pmt, bot));
  IntMatrix incl_top(2, 1), incl_bot(1, 1), aug_top(1, 2), aug_bot(1, 1);
  incl_top.at(0, 0) = 1;  // 1 -> t
  incl_bot.at(0, 0) = 1;
  aug_top.at(0, 0) = p;  // t -> p
  aug_top.at(0, 1) = 1;  // 1 -> 1
  aug_bot.at(0, 0) = 1;
  rep.seq1_top = injective(incl_top) && exactness_check(incl_top, m_top) && exactness_check(m_top, aug_top) &&
                 surjective(aug_top);
  rep.seq1_bottom = injective(incl_bot) && exactness_check(incl_bot, m_bot) && exactness_check(m_bot, aug_bot) &&
                    surjective(aug_bot);

  // sequence 2: 0 -> Z -> A{x_{C_p}} -> (1 - gamma) -> A{x_{C_p}} -> Z* -> 0
  auto t_gen = make_orbit(cp, bot);
  auto b_top = span_basis(cp, t_gen, top);
  auto b_bot = span_basis(cp, t_gen, bot);
  if (b_top.rank() != 1 || b_bot.rank() != p) throw std::logic_error("unexpected span ranks for C_p");
  std::vector<int> gamma_map(t_gen.size);
  for (int x = 0; x < t_gen.size; ++x) gamma_map[x] = t_gen.act(1, x);
  GMap gamma{t_gen, t_gen, gamma_map};
  IntMatrix om_top = matadd(IntMatrix::identity(1), scale(Int(-1), span_translate(b_top, gamma)));
  IntMatrix om_bot = matadd(IntMatrix::identity(p), scale(Int(-1), span_translate(b_bot, gamma)));
  IntMatrix res_mat = span_res(b_top, b_bot);
  IntMatrix tr_mat = span_tr(b_bot, b_top);
  IntMatrix z_incl_top(1, 1);
  z_incl_top.at(0, 0) = 1;  // 1 -> the unique top span
  IntMatrix z_incl_bot = matmul(res_mat, z_incl_top);
  IntMatrix zs_surj_top(1, 1);
  zs_surj_top.at(0, 0) = 1;
  IntMatrix zs_surj_bot(1, p);
  for (int i = 0; i < p; ++i) zs_surj_bot.at(0, i) = 1;
  // Mackey-map sanity: the surjection intertwines tr (identity on Z*) and
  // res (multiplication by p on Z*)
  bool mackey_ok = matmul(zs_surj_top, tr_mat) == zs_surj_bot &&
                   matmul(zs_surj_bot, res_mat) == scale(Int(p), zs_surj_top) &&
                   matmul(tr_mat, z_incl_bot) == scale(Int(p), z_incl_top);
  rep.seq2_top = mackey_ok && injective(z_incl_top) && exactness_check(z_incl_top, om_top) &&
                 exactness_check(om_top, zs_surj_top) && surjective(zs_surj_top);
  rep.seq2_bottom = injective(z_incl_bot) && exactness_check(z_incl_bot, om_bot) &&
                    exactness_check(om_bot, zs_surj_bot) && surjective(zs_surj_bot);

  rep.middle_composites_zero = zero(matmul(m_top, incl_top)) && zero(matmul(aug_top, m_top)) &&
                               zero(matmul(m_bot, incl_bot)) && zero(matmul(aug_bot, m_bot)) &&
                               zero(matmul(om_top, z_incl_top)) && zero(matmul(zs_surj_top, om_top)) &&
                               zero(matmul(om_bot, z_incl_bot)) && zero(matmul(zs_surj_bot, om_bot));
  return rep;
}

FreeChangeOfGroup restrict_free(const GroupPtr& g, const GSet& t, int h_id) {
  FreeChangeOfGroup out;
  auto hg = as_group(g, h_id);
  out.expected_gen = restrict_gset(t, hg);
  const auto& hlat = hg.group->lattice;
  const auto& glat = g->lattice;
  for (int kl = 0; kl < hlat.num_subgroups(); ++kl) {
    out.lhs_ranks.push_back(span_basis(hg.group, out.expected_gen, kl).rank());
    std::uint64_t ambient = 0;
    for (int e : hlat.subgroups[kl].elements) ambient |= std::uint64_t{1} << hg.embed[e];
    out.rhs_ranks.push_back(span_basis(g, t, glat.id_of(ambient)).rank());
  }
  out.match = out.lhs_ranks == out.rhs_ranks;
  return out;
}

FreeChangeOfGroup norm_free(const GroupPtr& g, int h_id, const GSet& t_over_h) {
  FreeChangeOfGroup out;
  out.expected_gen = coinduce_gset(g, h_id, t_over_h);
  const auto& lat = g->lattice;
  for (int k = 0; k < lat.num_subgroups(); ++k) {
    out.lhs_ranks.push_back(span_basis(g, out.expected_gen, k).rank());
    out.rhs_ranks.push_back(span_rank_by_orbit_count(g, out.expected_gen, k));
  }
  out.match = out.lhs_ranks == out.rhs_ranks;
  return out;
}

}  // namespace eqalg
