#include "eqalg/gset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace eqalg {

std::uint64_t GSet::stabilizer_mask(int x) const {
  std::uint64_t m = 0;
  for (int g = 0; g < group->order; ++g)
    if (act(g, x) == x) m |= std::uint64_t{1} << g;
  return m;
}

int GSet::stabilizer_id(int x) const { return group->lattice.id_of(stabilizer_mask(x)); }

GSet make_gset(GroupPtr g, int size, std::vector<int> action) {
  GSet x;
  x.group = std::move(g);
  x.size = size;
  x.action = std::move(action);
  const int n = x.group->order;
  if (static_cast<int>(x.action.size()) != n * size) throw std::invalid_argument("action table size");
  for (int p = 0; p < size; ++p)
    if (x.act(0, p) != p) throw std::invalid_argument("identity does not act trivially");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int p = 0; p < size; ++p)
        if (x.act(x.group->mul(a, b), p) != x.act(a, x.act(b, p)))
          throw std::invalid_argument("action is not compatible with multiplication");

  x.orbit_ids.assign(size, -1);
  for (int p = 0; p < size; ++p) {
    if (x.orbit_ids[p] >= 0) continue;
    int oid = x.num_orbits();
    x.orbit_reps.push_back(p);
    for (int a = 0; a < n; ++a) x.orbit_ids[x.act(a, p)] = oid;
    x.stabilizer_class.push_back(x.group->lattice.conj_class[x.stabilizer_id(p)]);
  }
  return x;
}

GSet empty_gset(GroupPtr g) { return make_gset(std::move(g), 0, {}); }

GSet point_gset(GroupPtr g) {
  int n = g->order;
  return make_gset(std::move(g), 1, std::vector<int>(n, 0));
}

GSet make_orbit(const GroupPtr& g, int subgroup_id) {
  const auto& sub = g->lattice.subgroups.at(subgroup_id);
  const int n = g->order;
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int a = 0; a < n; ++a) {
    if (coset_of[a] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int h : sub.elements) coset_of[g->mul(a, h)] = c;
  }
  int size = static_cast<int>(reps.size());
  std::vector<int> action(n * size);
  for (int a = 0; a < n; ++a)
    for (int p = 0; p < size; ++p) action[a * size + p] = coset_of[g->mul(a, reps[p])];
  return make_gset(g, size, std::move(action));
}

GSet disjoint_union(const std::vector<GSet>& parts) {
  if (parts.empty()) throw std::invalid_argument("disjoint_union needs at least one part for the group");
  GroupPtr g = parts.front().group;
  int size = 0;
  for (const auto& p : parts) size += p.size;
  const int n = g->order;
  std::vector<int> action(n * size);
  int off = 0;
  for (const auto& p : parts) {
    for (int a = 0; a < n; ++a)
      for (int x = 0; x < p.size; ++x) action[a * size + off + x] = off + p.act(a, x);
    off += p.size;
  }
  return make_gset(g, size, std::move(action));
}

GMap sub_gset(const GSet& x, const std::vector<int>& points) {
  const int n = x.group->order;
  std::vector<int> local_of(x.size, -1);
  for (size_t i = 0; i < points.size(); ++i) local_of[points[i]] = static_cast<int>(i);
  int size = static_cast<int>(points.size());
  std::vector<int> action(n * size);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < size; ++i) {
      int img = local_of[x.act(a, points[i])];
      if (img < 0) throw std::invalid_argument("point set is not action-stable");
      action[a * size + i] = img;
    }
  GMap inc;
  inc.source = make_gset(x.group, size, std::move(action));
  inc.target = x;
  inc.f = points;
  return inc;
}

bool is_equivariant(const GMap& m) {
  const int n = m.source.group->order;
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < m.source.size; ++x)
      if (m.f[m.source.act(a, x)] != m.target.act(a, m.f[x])) return false;
  return true;
}

std::vector<GMap> hom_orbits(const GSet& source, const GSet& target) {
  if (source.num_orbits() != 1 || target.num_orbits() > 1)
    throw std::invalid_argument("hom_orbits expects transitive G-sets");
  std::vector<GMap> out;
  if (source.size == 0 || target.size == 0) return out;
  const auto& g = *source.group;
  std::uint64_t stab0 = source.stabilizer_mask(0);
  // transversal: for each point, one element carrying point 0 there
  std::vector<int> carry(source.size, -1);
  for (int a = 0; a < g.order; ++a) {
    int p = source.act(a, 0);
    if (carry[p] < 0) carry[p] = a;
  }
  for (int y = 0; y < target.size; ++y) {
    if ((stab0 & ~target.stabilizer_mask(y)) != 0) continue;
    GMap m;
    m.source = source;
    m.target = target;
    m.f.resize(source.size);
    for (int p = 0; p < source.size; ++p) m.f[p] = target.act(carry[p], y);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<GMap> all_gmaps(const GSet& source, const GSet& target) {
  const auto& g = *source.group;
  int k = source.num_orbits();
  // choices per orbit: target points fixed by the orbit rep's stabilizer
  std::vector<std::vector<int>> choices(k);
  for (int o = 0; o < k; ++o) {
    std::uint64_t stab = source.stabilizer_mask(source.orbit_reps[o]);
    for (int y = 0; y < target.size; ++y)
      if ((stab & ~target.stabilizer_mask(y)) == 0) choices[o].push_back(y);
  }
  std::vector<int> carry(source.size, -1);
  std::vector<int> rep_of(source.size, -1);
  for (int o = 0; o < k; ++o) {
    int r = source.orbit_reps[o];
    for (int a = 0; a < g.order; ++a) {
      int p = source.act(a, r);
      if (carry[p] < 0) {
        carry[p] = a;
        rep_of[p] = o;
      }
    }
  }
  std::vector<GMap> out;
  std::vector<int> pick(k, 0);
  while (true) {
    bool any_empty = false;
    for (int o = 0; o < k; ++o) any_empty |= choices[o].empty();
    if (any_empty) break;
    GMap m;
    m.source = source;
    m.target = target;
    m.f.resize(source.size);
    for (int p = 0; p < source.size; ++p)
      m.f[p] = target.act(carry[p], choices[rep_of[p]][pick[rep_of[p]]]);
    out.push_back(std::move(m));
    int i = k - 1;
    while (i >= 0 && pick[i] + 1 == static_cast<int>(choices[i].size())) pick[i--] = 0;
    if (i < 0) break;
    ++pick[i];
  }
  if (source.size == 0) {
    GMap m;
    m.source = source;
    m.target = target;
    out.push_back(std::move(m));
  }
  return out;
}

Pullback pullback(const GMap& f, const GMap& g) {
  if (f.target.size != g.target.size) throw std::invalid_argument("pullback needs a common target");
  GroupPtr grp = f.source.group;
  const int n = grp->order;
  std::vector<std::pair<int, int>> pts;
  for (int x = 0; x < f.source.size; ++x)
    for (int y = 0; y < g.source.size; ++y)
      if (f.f[x] == g.f[y]) pts.emplace_back(x, y);
  std::map<std::pair<int, int>, int> index;
  for (size_t i = 0; i < pts.size(); ++i) index[pts[i]] = static_cast<int>(i);
  int size = static_cast<int>(pts.size());
  std::vector<int> action(n * size);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < size; ++i)
      action[a * size + i] = index.at({f.source.act(a, pts[i].first), g.source.act(a, pts[i].second)});
  Pullback pb;
  pb.object = make_gset(grp, size, std::move(action));
  pb.points = pts;
  pb.proj_f.source = pb.object;
  pb.proj_f.target = f.source;
  pb.proj_g.source = pb.object;
  pb.proj_g.target = g.source;
  for (auto& [x, y] : pts) {
    pb.proj_f.f.push_back(x);
    pb.proj_g.f.push_back(y);
  }
  return pb;
}

FixedPoints fixed_points(const GSet& x, int normal_id) {
  const auto& lat = x.group->lattice;
  if (!lat.normal.at(normal_id)) throw std::invalid_argument("fixed_points needs a normal subgroup");
  const auto& nsub = lat.subgroups[normal_id];
  std::vector<int> pts;
  for (int p = 0; p < x.size; ++p) {
    bool fixed = true;
    for (int e : nsub.elements) fixed &= x.act(e, p) == p;
    if (fixed) pts.push_back(p);
  }
  FixedPoints fp;
  fp.inclusion = sub_gset(x, pts);
  fp.g_set = fp.inclusion.source;
  fp.q = quotient_group(x.group, normal_id);
  const auto& proj = fp.q.project;
  // the G-action on fixed points factors through Q; act via any preimage
  int qn = fp.q.group->order;
  std::vector<int> rep(qn, -1);
  for (int e = 0; e < x.group->order; ++e)
    if (rep[proj[e]] < 0) rep[proj[e]] = e;
  int size = fp.g_set.size;
  std::vector<int> qaction(qn * size);
  for (int a = 0; a < qn; ++a)
    for (int i = 0; i < size; ++i) qaction[a * size + i] = fp.g_set.act(rep[a], i);
  fp.q_set = make_gset(fp.q.group, size, std::move(qaction));
  return fp;
}

GSet restrict_gset(const GSet& x, const SubgroupGroup& h) {
  int m = h.group->order;
  std::vector<int> action(m * x.size);
  for (int a = 0; a < m; ++a)
    for (int p = 0; p < x.size; ++p) action[a * x.size + p] = x.act(h.embed[a], p);
  return make_gset(h.group, x.size, std::move(action));
}

GSet induce_gset(const GroupPtr& g, int subgroup_id, const GSet& s) {
  auto h = as_group(g, subgroup_id);
  if (s.group->order != h.group->order) throw std::invalid_argument("induce: set is not over the subgroup");
  const auto& sub = g->lattice.subgroups[subgroup_id];
  const int n = g->order;
  std::vector<int> local_of(n, -1);
  for (size_t i = 0; i < h.embed.size(); ++i) local_of[h.embed[i]] = static_cast<int>(i);
  std::vector<int> coset_of(n, -1), reps;
  for (int a = 0; a < n; ++a) {
    if (coset_of[a] >= 0) continue;
    coset_of[a] = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int e : sub.elements) coset_of[g->mul(a, e)] = coset_of[a];
  }
  int k = static_cast<int>(reps.size());
  int size = k * s.size;
  std::vector<int> action(n * size);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < k; ++i) {
      int prod = g->mul(a, reps[i]);
      int j = coset_of[prod];
      int hh = local_of[g->mul(g->inv(reps[j]), prod)];  // prod = reps[j] * h
      for (int sp = 0; sp < s.size; ++sp)
        action[a * size + (i * s.size + sp)] = j * s.size + s.act(hh, sp);
    }
  return make_gset(g, size, std::move(action));
}

GSet coinduce_gset(const GroupPtr& g, int subgroup_id, const GSet& s) {
  auto h = as_group(g, subgroup_id);
  if (s.group->order != h.group->order) throw std::invalid_argument("coinduce: set is not over the subgroup");
  const auto& sub = g->lattice.subgroups[subgroup_id];
  const int n = g->order;
  std::vector<int> local_of(n, -1);
  for (size_t i = 0; i < h.embed.size(); ++i) local_of[h.embed[i]] = static_cast<int>(i);
  // right cosets H\G, reps by least element
  std::vector<int> coset_of(n, -1), reps;
  for (int a = 0; a < n; ++a) {
    if (coset_of[a] >= 0) continue;
    coset_of[a] = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int e : sub.elements) coset_of[g->mul(e, a)] = coset_of[a];
  }
  int k = static_cast<int>(reps.size());
  long long total = 1;
  for (int i = 0; i < k; ++i) {
    total *= s.size;
    if (total > 2'000'000) throw std::invalid_argument("coinduction too large");
  }
  int size = static_cast<int>(total);
  // phi is the tuple of values on reps; (a.phi)(r) = phi(ra) = hh . phi(r')
  // where r a = hh r'
  std::vector<int> tgt(k * n), via(k * n);
  for (int i = 0; i < k; ++i)
    for (int a = 0; a < n; ++a) {
      int prod = g->mul(reps[i], a);
      int j = coset_of[prod];
      tgt[i * n + a] = j;
      via[i * n + a] = local_of[g->mul(prod, g->inv(reps[j]))];  // prod = hh * reps[j]
    }
  auto decode = [&](int idx, std::vector<int>& t) {
    for (int i = k - 1; i >= 0; --i) {
      t[i] = idx % s.size;
      idx /= s.size;
    }
  };
  auto encode = [&](const std::vector<int>& t) {
    int idx = 0;
    for (int i = 0; i < k; ++i) idx = idx * s.size + t[i];
    return idx;
  };
  std::vector<int> action(static_cast<size_t>(n) * size);
  std::vector<int> t(k), u(k);
  for (int idx = 0; idx < size; ++idx) {
    decode(idx, t);
    for (int a = 0; a < n; ++a) {
      for (int i = 0; i < k; ++i) u[i] = s.act(via[i * n + a], t[tgt[i * n + a]]);
      action[static_cast<size_t>(a) * size + idx] = encode(u);
    }
  }
  if (size == 0 && k > 0) return empty_gset(g);
  return make_gset(g, size, std::move(action));
}

DependentProduct dependent_product(const GMap& g, const GMap& h) {
  // g : A -> S, h : S -> T; points of the product are (t, sigma) with sigma a
  // section of g over the fiber h^-1(t)
  const GSet& A = g.source;
  const GSet& S = g.target;
  const GSet& T = h.target;
  if (h.source.size != S.size) throw std::invalid_argument("dependent_product: maps do not compose");
  GroupPtr grp = A.group;
  const int n = grp->order;
  std::vector<std::vector<int>> fiber(T.size);  // h^-1(t), increasing
  for (int sp = 0; sp < S.size; ++sp) fiber[h.f[sp]].push_back(sp);
  std::vector<std::vector<int>> g_fiber(S.size);  // g^-1(s), increasing
  for (int ap = 0; ap < A.size; ++ap) g_fiber[g.f[ap]].push_back(ap);

  struct Pt {
    int t;
    std::vector<int> sigma;  // indexed along fiber[t]
    bool operator<(const Pt& o) const { return std::tie(t, sigma) < std::tie(o.t, o.sigma); }
  };
  std::vector<Pt> pts;
  for (int t = 0; t < T.size; ++t) {
    std::vector<int> pick(fiber[t].size(), 0);
    bool any_empty = false;
    for (int s : fiber[t]) any_empty |= g_fiber[s].empty();
    if (any_empty) continue;
    if (fiber[t].empty()) {
      pts.push_back({t, {}});
      continue;
    }
    while (true) {
      Pt p;
      p.t = t;
      for (size_t i = 0; i < fiber[t].size(); ++i) p.sigma.push_back(g_fiber[fiber[t][i]][pick[i]]);
      pts.push_back(std::move(p));
      int i = static_cast<int>(fiber[t].size()) - 1;
      while (i >= 0 && pick[i] + 1 == static_cast<int>(g_fiber[fiber[t][i]].size())) pick[i--] = 0;
      if (i < 0) break;
      ++pick[i];
    }
  }
  std::map<Pt, int> index;
  for (size_t i = 0; i < pts.size(); ++i) index[pts[i]] = static_cast<int>(i);
  int size = static_cast<int>(pts.size());
  std::vector<int> action(static_cast<size_t>(n) * size);
  std::vector<int> pos_in_fiber(S.size, -1);
  for (int t = 0; t < T.size; ++t)
    for (size_t i = 0; i < fiber[t].size(); ++i) pos_in_fiber[fiber[t][i]] = static_cast<int>(i);
  for (int a = 0; a < n; ++a) {
    int ainv = grp->inv(a);
    for (int i = 0; i < size; ++i) {
      Pt q;
      q.t = T.act(a, pts[i].t);
      q.sigma.resize(fiber[q.t].size());
      for (size_t j = 0; j < fiber[q.t].size(); ++j) {
        int s_back = S.act(ainv, fiber[q.t][j]);
        q.sigma[j] = A.act(a, pts[i].sigma[pos_in_fiber[s_back]]);
      }
      action[static_cast<size_t>(a) * size + i] = index.at(q);
    }
  }
  DependentProduct dp;
  dp.object = make_gset(grp, size, std::move(action));
  dp.h_prime.source = dp.object;
  dp.h_prime.target = T;
  for (const auto& p : pts) dp.h_prime.f.push_back(p.t);
  // S x_T object, with evaluation to A and projection to the object
  GMap hmap = h;  // h : S -> T
  Pullback pb = pullback(hmap, dp.h_prime);
  dp.s_times_object = pb.object;
  dp.g_prime = pb.proj_g;
  dp.f_prime.source = pb.object;
  dp.f_prime.target = A;
  for (auto& [sp, pi] : pb.points) dp.f_prime.f.push_back(pts[pi].sigma[pos_in_fiber[sp]]);
  return dp;
}

std::vector<int> canonical_form(const GSet& x) {
  std::vector<int> cf = x.stabilizer_class;
  std::sort(cf.begin(), cf.end());
  return cf;
}

bool is_isomorphic(const GSet& x, const GSet& y) {
  return x.group.get() == y.group.get() && canonical_form(x) == canonical_form(y);
}

std::string gset_to_text(const GSet& x) {
  std::ostringstream os;
  os << "format: eqalg-gset/1\n";
  os << "group: " << x.group->name << "\n";
  os << "size: " << x.size << "\n";
  os << "action:";
  for (int v : x.action) os << ' ' << v;
  os << "\n";
  return os.str();
}

GSet gset_from_text(const GroupPtr& g, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int size = -1;
  std::vector<int> action;
  bool version_ok = false;
  std::string group_name;
  while (std::getline(is, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    std::string val = line.substr(colon + 1);
    if (key == "format") {
      version_ok = val.find("eqalg-gset/1") != std::string::npos;
    } else if (key == "group") {
      size_t b = val.find_first_not_of(' ');
      group_name = b == std::string::npos ? "" : val.substr(b);
    } else if (key == "size") {
      size = std::stoi(val);
    } else if (key == "action") {
      std::istringstream vs(val);
      int v;
      while (vs >> v) action.push_back(v);
    }
  }
  if (!version_ok) throw std::invalid_argument("unknown gset record format");
  if (group_name != g->name) throw std::invalid_argument("gset record is for group " + group_name);
  if (size < 0 || static_cast<int>(action.size()) != g->order * size)
    throw std::invalid_argument("bad gset record");
  return make_gset(g, size, std::move(action));
}

}  // namespace eqalg
