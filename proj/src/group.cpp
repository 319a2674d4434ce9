#include "eqalg/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace eqalg {

namespace {

// Closure of a seed set under multiplication. A nonempty multiplicatively
// closed subset of a finite group is a subgroup.
std::uint64_t closure(const std::vector<int>& mul, int order, std::uint64_t seed) {
  std::uint64_t cur = seed | 1u;  // identity
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < order; ++a) {
      if (!((cur >> a) & 1u)) continue;
      for (int b = 0; b < order; ++b) {
        if (!((cur >> b) & 1u)) continue;
        int c = mul[a * order + b];
        if (!((cur >> c) & 1u)) {
          cur |= std::uint64_t{1} << c;
          grew = true;
        }
      }
    }
  }
  return cur;
}

std::vector<int> mask_elements(std::uint64_t m, int order) {
  std::vector<int> out;
  for (int i = 0; i < order; ++i)
    if ((m >> i) & 1u) out.push_back(i);
  return out;
}

// Relabel a raw multiplication table so that element 0 is the identity and
// the remaining elements are numbered by first occurrence as generator words
// enumerated in length-lex order.
std::vector<int> bfs_relabel(const std::vector<int>& raw_mul, int order, int raw_identity,
                             const std::vector<int>& raw_gens) {
  std::vector<int> new_of_raw(order, -1);
  std::vector<int> raw_of_new;
  raw_of_new.reserve(order);
  new_of_raw[raw_identity] = 0;
  raw_of_new.push_back(raw_identity);
  std::vector<int> layer = {raw_identity};
  while (static_cast<int>(raw_of_new.size()) < order) {
    std::vector<int> next;
    for (int x : layer) {
      for (int g : raw_gens) {
        int y = raw_mul[x * order + g];
        if (new_of_raw[y] < 0) {
          new_of_raw[y] = static_cast<int>(raw_of_new.size());
          raw_of_new.push_back(y);
          next.push_back(y);
        }
      }
    }
    if (next.empty()) throw std::invalid_argument("generators do not generate the group");
    layer = std::move(next);
  }
  std::vector<int> mul(order * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      mul[a * order + b] = new_of_raw[raw_mul[raw_of_new[a] * order + raw_of_new[b]]];
  return mul;
}

struct RawGroup {
  int order = 0;
  std::vector<int> mul;
  int identity = 0;
  std::vector<int> gens;
};

RawGroup raw_cyclic_product(const std::vector<int>& factors) {
  int order = 1;
  for (int f : factors) order *= f;
  // mixed-radix tuples; generator i increments coordinate i
  auto index_of = [&](const std::vector<int>& t) {
    int idx = 0;
    for (size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i] + t[i];
    return idx;
  };
  auto tuple_of = [&](int idx) {
    std::vector<int> t(factors.size());
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
      t[i] = idx % factors[i];
      idx /= factors[i];
    }
    return t;
  };
  RawGroup rg;
  rg.order = order;
  rg.mul.resize(order * order);
  for (int a = 0; a < order; ++a) {
    auto ta = tuple_of(a);
    for (int b = 0; b < order; ++b) {
      auto tb = tuple_of(b);
      std::vector<int> tc(factors.size());
      for (size_t i = 0; i < factors.size(); ++i) tc[i] = (ta[i] + tb[i]) % factors[i];
      rg.mul[a * order + b] = index_of(tc);
    }
  }
  rg.identity = 0;
  for (size_t i = 0; i < factors.size(); ++i) {
    std::vector<int> t(factors.size(), 0);
    t[i] = factors[i] == 1 ? 0 : 1;
    rg.gens.push_back(index_of(t));
  }
  return rg;
}

RawGroup raw_dihedral(int order) {
  int m = order / 2;
  // element (i, j) = r^i s^j, index i + m*j
  RawGroup rg;
  rg.order = order;
  rg.mul.resize(order * order);
  for (int i1 = 0; i1 < m; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < m; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          int i = ((j1 ? m - i2 : i2) + i1) % m;
          int j = j1 ^ j2;
          rg.mul[(i1 + m * j1) * order + (i2 + m * j2)] = i + m * j;
        }
  rg.identity = 0;
  rg.gens = {1 % m, m};  // r, s
  if (m == 1) rg.gens = {m};
  return rg;
}

RawGroup raw_quaternion8() {
  // 0..7 = 1, -1, i, -i, j, -j, k, -k
  auto enc = [](int unit, int sign) { return unit * 2 + (sign < 0 ? 1 : 0); };
  // quaternion multiplication on symbols (unit 0=1,1=i,2=j,3=k)
  static const int tbl[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  RawGroup rg;
  rg.order = 8;
  rg.mul.resize(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, sa = a % 2 ? -1 : 1;
      int ub = b / 2, sb = b % 2 ? -1 : 1;
      int uc = tbl[ua][ub];
      int sc = sa * sb * sgn[ua][ub];
      rg.mul[a * 8 + b] = enc(uc, sc);
    }
  rg.identity = 0;
  rg.gens = {enc(1, 1), enc(2, 1)};  // i, j
  return rg;
}

RawGroup raw_symmetric(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  int order = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < order; ++i) index[perms[i]] = i;
  RawGroup rg;
  rg.order = order;
  rg.mul.resize(order * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      rg.mul[a * order + b] = index[c];
    }
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  rg.identity = index[id];
  if (n >= 2) {
    std::vector<int> t = id;
    std::swap(t[0], t[1]);
    rg.gens.push_back(index[t]);
  }
  if (n >= 3) {
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
    rg.gens.push_back(index[c]);
  }
  if (rg.gens.empty()) rg.gens.push_back(rg.identity);
  return rg;
}

void validate_table(const std::string& name, const std::vector<int>& mul, int order) {
  if (order <= 0 || order > 60) throw std::invalid_argument("unsupported group order for " + name);
  if (static_cast<int>(mul.size()) != order * order)
    throw std::invalid_argument("multiplication table has wrong size");
  for (int v : mul)
    if (v < 0 || v >= order) throw std::invalid_argument("table entry out of range");
  for (int a = 0; a < order; ++a) {
    if (mul[a * order] != a || mul[a] != a)
      throw std::invalid_argument("element 0 is not the identity");
    bool has_inverse = false;
    for (int b = 0; b < order; ++b) has_inverse |= mul[a * order + b] == 0;
    if (!has_inverse) throw std::invalid_argument("missing inverse");
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (mul[mul[a * order + b] * order + c] != mul[a * order + mul[b * order + c]])
          throw std::invalid_argument("table is not associative");
}

}  // namespace

std::uint64_t FiniteGroup::conj_mask(int g, std::uint64_t m) const {
  std::uint64_t out = 0;
  for (int x = 0; x < order; ++x)
    if ((m >> x) & 1u) out |= std::uint64_t{1} << conj(g, x);
  return out;
}

int FiniteGroup::element_order(int a) const {
  int x = a, n = 1;
  while (x != 0) {
    x = mul(x, a);
    ++n;
  }
  return n;
}

SubgroupLattice subgroup_lattice(const FiniteGroup& g) {
  const int n = g.order;
  std::set<std::uint64_t> masks;
  masks.insert(1u);  // trivial
  // cyclic subgroups, then grow by adjoining one generator at a time
  for (int a = 0; a < n; ++a) masks.insert(closure(g.mul_table(), n, std::uint64_t{1} << a));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint64_t> cur(masks.begin(), masks.end());
    for (std::uint64_t m : cur) {
      for (int a = 0; a < n; ++a) {
        if ((m >> a) & 1u) continue;
        std::uint64_t bigger = closure(g.mul_table(), n, m | (std::uint64_t{1} << a));
        if (masks.insert(bigger).second) grew = true;
      }
    }
  }

  SubgroupLattice lat;
  for (std::uint64_t m : masks) {
    Subgroup s;
    s.mask = m;
    s.elements = mask_elements(m, n);
    s.order = static_cast<int>(s.elements.size());
    lat.subgroups.push_back(std::move(s));
  }
  std::sort(lat.subgroups.begin(), lat.subgroups.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.elements < b.elements;
  });
  const int ns = static_cast<int>(lat.subgroups.size());
  for (int i = 0; i < ns; ++i) {
    lat.subgroups[i].id = i;
    lat.id_by_mask[lat.subgroups[i].mask] = i;
  }
  lat.trivial_id = 0;
  lat.top_id = ns - 1;

  lat.leq.assign(ns, std::vector<bool>(ns, false));
  for (int k = 0; k < ns; ++k)
    for (int h = 0; h < ns; ++h)
      lat.leq[k][h] = (lat.subgroups[k].mask & ~lat.subgroups[h].mask) == 0;

  // conjugation orbits
  lat.conj_class.assign(ns, -1);
  int next_class = 0;
  for (int i = 0; i < ns; ++i) {
    if (lat.conj_class[i] >= 0) continue;
    std::vector<int> members;
    for (int e = 0; e < n; ++e) {
      int j = lat.id_of(g.conj_mask(e, lat.subgroups[i].mask));
      if (lat.conj_class[j] < 0) {
        lat.conj_class[j] = next_class;
        members.push_back(j);
      }
    }
    std::sort(members.begin(), members.end());
    lat.classes.push_back(members);
    lat.class_reps.push_back(members.front());
    ++next_class;
  }

  lat.normal.assign(ns, false);
  lat.normalizer.assign(ns, -1);
  lat.weyl_order.assign(ns, 0);
  for (int i = 0; i < ns; ++i) {
    lat.normal[i] = lat.classes[lat.conj_class[i]].size() == 1;
    std::uint64_t nm = 0;
    for (int e = 0; e < n; ++e)
      if (g.conj_mask(e, lat.subgroups[i].mask) == lat.subgroups[i].mask)
        nm |= std::uint64_t{1} << e;
    lat.normalizer[i] = lat.id_of(nm);
    lat.weyl_order[i] = lat.subgroups[lat.normalizer[i]].order / lat.subgroups[i].order;
  }

  // longest chain, counted in subgroups
  std::vector<int> chain(ns, 1);
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < h; ++k)
      if (lat.leq[k][h] && k != h) chain[h] = std::max(chain[h], chain[k] + 1);
  lat.depth = chain[lat.top_id];
  return lat;
}

GroupPtr FiniteGroup::from_table(const std::string& name, std::vector<int> mul) {
  int order = static_cast<int>(mul.size());
  int n = 0;
  while (n * n < order) ++n;
  if (n * n != order) throw std::invalid_argument("table is not square");
  validate_table(name, mul, n);
  auto g = std::make_shared<FiniteGroup>();
  g->name = name;
  g->order = n;
  g->mul_ = std::move(mul);
  g->inv_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->mul(a, b) == 0) g->inv_[a] = b;
  g->lattice = subgroup_lattice(*g);
  return g;
}

GroupPtr build_group(const std::string& spec) {
  RawGroup rg;
  if (spec == "Q8") {
    rg = raw_quaternion8();
  } else if (spec.size() >= 2 && spec[0] == 'S' && spec.find('x') == std::string::npos) {
    int n = 0;
    try {
      size_t pos = 0;
      n = std::stoi(spec.substr(1), &pos);
      if (pos + 1 != spec.size()) throw std::invalid_argument("");
    } catch (...) {
      throw std::invalid_argument("malformed group descriptor: " + spec);
    }
    if (n < 1 || n > 4) throw std::invalid_argument("unsupported symmetric group: " + spec);
    rg = raw_symmetric(n);
  } else if (spec.size() >= 2 && spec[0] == 'D') {
    int n = 0;
    try {
      size_t pos = 0;
      n = std::stoi(spec.substr(1), &pos);
      if (pos + 1 != spec.size()) throw std::invalid_argument("");
    } catch (...) {
      throw std::invalid_argument("malformed group descriptor: " + spec);
    }
    if (n < 4 || n % 2 != 0 || n > 60) throw std::invalid_argument("unsupported dihedral order: " + spec);
    rg = raw_dihedral(n);
  } else if (!spec.empty() && spec[0] == 'C') {
    std::vector<int> factors;
    size_t i = 0;
    while (i < spec.size()) {
      if (spec[i] != 'C') throw std::invalid_argument("malformed group descriptor: " + spec);
      size_t j = i + 1;
      while (j < spec.size() && std::isdigit(static_cast<unsigned char>(spec[j]))) ++j;
      if (j == i + 1) throw std::invalid_argument("malformed group descriptor: " + spec);
      factors.push_back(std::stoi(spec.substr(i + 1, j - i - 1)));
      if (j == spec.size()) break;
      if (spec[j] != 'x' || j + 1 == spec.size())
        throw std::invalid_argument("malformed group descriptor: " + spec);
      i = j + 1;
    }
    long long total = 1;
    for (int f : factors) {
      if (f < 1) throw std::invalid_argument("malformed group descriptor: " + spec);
      total *= f;
    }
    if (total > 60) throw std::invalid_argument("unsupported group order: " + spec);
    rg = raw_cyclic_product(factors);
  } else {
    throw std::invalid_argument("malformed group descriptor: " + spec);
  }
  auto mul = bfs_relabel(rg.mul, rg.order, rg.identity, rg.gens);
  return FiniteGroup::from_table(spec, std::move(mul));
}

SubgroupGroup as_group(const GroupPtr& g, int subgroup_id) {
  const auto& sub = g->lattice.subgroups.at(subgroup_id);
  if (subgroup_id == g->lattice.top_id) {
    std::vector<int> embed(g->order);
    std::iota(embed.begin(), embed.end(), 0);
    return {g, std::move(embed)};
  }
  std::lock_guard<std::mutex> lock(g->cache_mutex_);
  auto it = g->subgroup_cache_.find(subgroup_id);
  if (it != g->subgroup_cache_.end()) return it->second;
  const std::vector<int>& embed = sub.elements;  // sorted, identity first
  std::vector<int> local_of(g->order, -1);
  for (size_t i = 0; i < embed.size(); ++i) local_of[embed[i]] = static_cast<int>(i);
  int m = sub.order;
  std::vector<int> mul(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) mul[a * m + b] = local_of[g->mul(embed[a], embed[b])];
  SubgroupGroup out;
  out.group = FiniteGroup::from_table(g->name + ":" + std::to_string(subgroup_id), std::move(mul));
  out.embed = embed;
  g->subgroup_cache_[subgroup_id] = out;
  return out;
}

QuotientGroup quotient_group(const GroupPtr& g, int normal_id) {
  const auto& lat = g->lattice;
  if (!lat.normal.at(normal_id)) throw std::invalid_argument("subgroup is not normal");
  std::lock_guard<std::mutex> lock(g->cache_mutex_);
  auto it = g->quotient_cache_.find(normal_id);
  if (it != g->quotient_cache_.end()) return it->second;
  const auto& nsub = lat.subgroups[normal_id];
  std::vector<int> coset_of(g->order, -1);
  std::vector<int> reps;  // least element of each coset, in increasing order
  for (int a = 0; a < g->order; ++a) {
    if (coset_of[a] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int x : nsub.elements) coset_of[g->mul(a, x)] = c;
  }
  int q = static_cast<int>(reps.size());
  std::vector<int> mul(q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) mul[a * q + b] = coset_of[g->mul(reps[a], reps[b])];
  QuotientGroup out;
  out.group = FiniteGroup::from_table(g->name + "/" + std::to_string(normal_id), std::move(mul));
  out.project = coset_of;
  g->quotient_cache_[normal_id] = out;
  return out;
}

bool is_solvable(const FiniteGroup& g) {
  std::uint64_t cur = (g.order >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.order) - 1);
  while (true) {
    std::uint64_t seed = 1;
    for (int a = 0; a < g.order; ++a) {
      if (!((cur >> a) & 1u)) continue;
      for (int b = 0; b < g.order; ++b) {
        if (!((cur >> b) & 1u)) continue;
        int c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
        seed |= std::uint64_t{1} << c;
      }
    }
    std::uint64_t derived = closure(g.mul_table(), g.order, seed);
    if (derived == cur) return cur == 1u;
    cur = derived;
    if (cur == 1u) return true;
  }
}

int local_subgroup_id(const FiniteGroup& g, int h_id, const SubgroupGroup& hgrp, int k_id) {
  const auto& ksub = g.lattice.subgroups.at(k_id);
  if (!g.lattice.leq[k_id][h_id]) throw std::invalid_argument("subgroup not contained");
  std::vector<int> g_to_local(g.order, -1);
  for (size_t i = 0; i < hgrp.embed.size(); ++i) g_to_local[hgrp.embed[i]] = static_cast<int>(i);
  std::uint64_t mask = 0;
  for (int e : ksub.elements) mask |= std::uint64_t{1} << g_to_local[e];
  return hgrp.group->lattice.id_of(mask);
}

int quotient_subgroup_id(const FiniteGroup& g, const QuotientGroup& q, int k_id) {
  const auto& ksub = g.lattice.subgroups.at(k_id);
  std::uint64_t mask = 0;
  for (int e : ksub.elements) mask |= std::uint64_t{1} << q.project[e];
  return q.group->lattice.id_of(mask);
}

int preimage_subgroup_id(const FiniteGroup& g, const QuotientGroup& q, int qk_id) {
  const auto& qsub = q.group->lattice.subgroups.at(qk_id);
  std::uint64_t mask = 0;
  for (int e = 0; e < g.order; ++e)
    if (qsub.contains(q.project[e])) mask |= std::uint64_t{1} << e;
  return g.lattice.id_of(mask);
}

std::vector<std::string> subgroup_labels(const FiniteGroup& g) {
  const auto& lat = g.lattice;
  // cheap isomorphism-type tags, enough for display
  std::vector<std::string> base(lat.num_subgroups());
  for (const auto& s : lat.subgroups) {
    if (s.order == 1) {
      base[s.id] = "e";
    } else if (s.id == lat.top_id) {
      base[s.id] = g.name;
    } else {
      // detect cyclic by looking for an element of full order inside s
      bool cyclic = false;
      for (int e : s.elements) {
        int x = e, n = 1;
        while (x != 0) {
          x = g.mul(x, e);
          ++n;
        }
        if (n == s.order) {
          cyclic = true;
          break;
        }
      }
      bool abelian = true;
      for (int a : s.elements)
        for (int b : s.elements) abelian &= g.mul(a, b) == g.mul(b, a);
      if (cyclic)
        base[s.id] = "C" + std::to_string(s.order);
      else if (abelian)
        base[s.id] = "A" + std::to_string(s.order);
      else
        base[s.id] = "U" + std::to_string(s.order);
    }
  }
  std::map<std::string, int> total, seen;
  for (const auto& s : base) ++total[s];
  std::vector<std::string> out(base.size());
  for (size_t i = 0; i < base.size(); ++i) {
    if (total[base[i]] == 1) {
      out[i] = base[i];
    } else {
      out[i] = base[i] + "_" + std::to_string(++seen[base[i]]);
    }
  }
  return out;
}

std::string group_to_text(const FiniteGroup& g) {
  std::ostringstream os;
  os << "format: eqalg-group/1\n";
  os << "name: " << g.name << "\n";
  os << "order: " << g.order << "\n";
  os << "mul:";
  for (int v : g.mul_table()) os << ' ' << v;
  os << "\n";
  return os.str();
}

GroupPtr group_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line, name;
  int order = -1;
  std::vector<int> mul;
  bool version_ok = false;
  while (std::getline(is, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    std::string val = line.substr(colon + 1);
    if (key == "format") {
      version_ok = val.find("eqalg-group/1") != std::string::npos;
    } else if (key == "name") {
      size_t b = val.find_first_not_of(' ');
      name = b == std::string::npos ? "" : val.substr(b);
    } else if (key == "order") {
      order = std::stoi(val);
    } else if (key == "mul") {
      std::istringstream vs(val);
      int v;
      while (vs >> v) mul.push_back(v);
    }
  }
  if (!version_ok) throw std::invalid_argument("unknown group record format");
  if (order < 1 || static_cast<int>(mul.size()) != order * order)
    throw std::invalid_argument("bad group record");
  return FiniteGroup::from_table(name, std::move(mul));
}

}  // namespace eqalg
