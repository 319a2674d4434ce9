#include "eqalg/burnside.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace eqalg {

namespace {

std::mutex marks_mutex;
std::map<const FiniteGroup*, std::pair<GroupPtr, TableOfMarks>> marks_cache;

int classes_of(const GroupPtr& g, int h_id) {
  return as_group(g, h_id).group->lattice.num_classes();
}

void require_same_level(const BurnsideElement& a, const BurnsideElement& b) {
  if (a.group.get() != b.group.get() || a.level != b.level)
    throw std::invalid_argument("burnside elements at different levels");
}

}  // namespace

const TableOfMarks& table_of_marks_of_group(const GroupPtr& k) {
  std::lock_guard<std::mutex> lock(marks_mutex);
  auto it = marks_cache.find(k.get());
  if (it != marks_cache.end()) return it->second.second;
  const auto& lat = k->lattice;
  int nc = lat.num_classes();
  TableOfMarks tom;
  tom.class_reps = lat.class_reps;
  tom.m = IntMatrix(nc, nc);
  for (int j = 0; j < nc; ++j) {
    auto orbit = make_orbit(k, lat.class_reps[j]);
    for (int c = 0; c < nc; ++c) {
      const auto& ksub = lat.subgroups[lat.class_reps[c]];
      int fixed = 0;
      for (int p = 0; p < orbit.size; ++p) {
        bool fix = true;
        for (int e : ksub.elements) fix &= orbit.act(e, p) == p;
        fixed += fix;
      }
      tom.m.at(j, c) = fixed;
    }
  }
  return marks_cache.emplace(k.get(), std::make_pair(k, std::move(tom))).first->second.second;
}

const TableOfMarks& table_of_marks(const GroupPtr& g, int h_id) {
  return table_of_marks_of_group(as_group(g, h_id).group);
}

bool BurnsideElement::is_integral() const {
  for (const auto& c : coeffs)
    if (denominator(c) != 1) return false;
  return true;
}

bool BurnsideElement::is_effective() const {
  for (const auto& c : coeffs)
    if (denominator(c) != 1 || c < 0) return false;
  return true;
}

BurnsideElement burnside_zero(const GroupPtr& g, int h_id) {
  return {g, h_id, std::vector<Rat>(classes_of(g, h_id), Rat(0))};
}

BurnsideElement burnside_one(const GroupPtr& g, int h_id) {
  auto e = burnside_zero(g, h_id);
  e.coeffs.back() = 1;  // the top class [H/H]
  return e;
}

BurnsideElement burnside_basis(const GroupPtr& g, int h_id, int local_class) {
  auto e = burnside_zero(g, h_id);
  e.coeffs.at(local_class) = 1;
  return e;
}

BurnsideElement from_gset(const GroupPtr& g, int h_id, const GSet& x) {
  auto hg = as_group(g, h_id);
  if (x.group->order != hg.group->order) throw std::invalid_argument("from_gset: set is not over level group");
  auto e = burnside_zero(g, h_id);
  for (int o = 0; o < x.num_orbits(); ++o) e.coeffs[x.stabilizer_class[o]] += 1;
  return e;
}

GSet realize(const BurnsideElement& a) {
  if (!a.is_effective()) throw std::invalid_argument("realize: element is not effective");
  auto hg = as_group(a.group, a.level);
  std::vector<GSet> parts;
  const auto& lat = hg.group->lattice;
  for (size_t c = 0; c < a.coeffs.size(); ++c) {
    long long n = static_cast<long long>(numerator(a.coeffs[c]));
    for (long long i = 0; i < n; ++i) parts.push_back(make_orbit(hg.group, lat.class_reps[c]));
  }
  if (parts.empty()) return empty_gset(hg.group);
  return disjoint_union(parts);
}

BurnsideElement add(const BurnsideElement& a, const BurnsideElement& b) {
  require_same_level(a, b);
  auto out = a;
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

BurnsideElement negate(const BurnsideElement& a) {
  auto out = a;
  for (auto& c : out.coeffs) c = -c;
  return out;
}

BurnsideElement scale(const Rat& c, const BurnsideElement& a) {
  auto out = a;
  for (auto& v : out.coeffs) v *= c;
  return out;
}

std::vector<Rat> marks_of(const BurnsideElement& a) {
  const auto& tom = table_of_marks(a.group, a.level);
  int nc = tom.m.rows;
  std::vector<Rat> marks(nc, Rat(0));
  for (int k = 0; k < nc; ++k)
    for (int j = 0; j < nc; ++j) marks[k] += a.coeffs[j] * Rat(tom.m.at(j, k));
  return marks;
}

BurnsideElement from_marks(const GroupPtr& g, int h_id, const std::vector<Rat>& marks) {
  const auto& tom = table_of_marks(g, h_id);
  int nc = tom.m.rows;
  if (static_cast<int>(marks.size()) != nc) throw std::invalid_argument("from_marks: wrong length");
  // marks[k] = sum_j coeffs[j] m(j,k); m is lower triangular, solve downward
  std::vector<Rat> coeffs(nc, Rat(0));
  for (int k = nc - 1; k >= 0; --k) {
    Rat rhs = marks[k];
    for (int j = k + 1; j < nc; ++j) rhs -= coeffs[j] * Rat(tom.m.at(j, k));
    coeffs[k] = rhs / Rat(tom.m.at(k, k));
  }
  return {g, h_id, std::move(coeffs)};
}

BurnsideElement multiply(const BurnsideElement& a, const BurnsideElement& b) {
  require_same_level(a, b);
  auto ma = marks_of(a), mb = marks_of(b);
  for (size_t i = 0; i < ma.size(); ++i) ma[i] *= mb[i];
  return from_marks(a.group, a.level, ma);
}

IntMatrix multiplication_matrix(const BurnsideElement& a) {
  if (!a.is_integral()) throw std::invalid_argument("multiplication_matrix: integral element required");
  int nc = static_cast<int>(a.coeffs.size());
  IntMatrix m(nc, nc);
  for (int j = 0; j < nc; ++j) {
    auto col = multiply(a, burnside_basis(a.group, a.level, j));
    for (int i = 0; i < nc; ++i) {
      if (denominator(col.coeffs[i]) != 1) throw std::logic_error("integral product has a denominator");
      m.at(i, j) = numerator(col.coeffs[i]);
    }
  }
  return m;
}

BurnsideElement burnside_res(const BurnsideElement& a, int k_id) {
  const auto& lat = a.group->lattice;
  if (!lat.leq[k_id][a.level]) throw std::invalid_argument("res: target level not below source");
  auto hg = as_group(a.group, a.level);
  int k_local = local_subgroup_id(*a.group, a.level, hg, k_id);
  auto k_in_h = as_group(hg.group, k_local);
  auto out = burnside_zero(a.group, k_id);
  const auto& hlat = hg.group->lattice;
  for (size_t c = 0; c < a.coeffs.size(); ++c) {
    if (a.coeffs[c] == 0) continue;
    auto orbit = make_orbit(hg.group, hlat.class_reps[static_cast<int>(c)]);
    auto res = restrict_gset(orbit, k_in_h);
    for (int o = 0; o < res.num_orbits(); ++o) out.coeffs[res.stabilizer_class[o]] += a.coeffs[c];
  }
  return out;
}

BurnsideElement burnside_tr(const BurnsideElement& a, int k_id) {
  const auto& lat = a.group->lattice;
  if (!lat.leq[a.level][k_id]) throw std::invalid_argument("tr: target level not above source");
  auto lg = as_group(a.group, a.level);
  auto kg = as_group(a.group, k_id);
  const auto& llat = lg.group->lattice;
  auto out = burnside_zero(a.group, k_id);
  for (size_t c = 0; c < a.coeffs.size(); ++c) {
    if (a.coeffs[c] == 0) continue;
    // induction carries [L/J] to [K/J]
    const auto& jsub = llat.subgroups[llat.class_reps[static_cast<int>(c)]];
    std::uint64_t ambient = 0;
    for (int e : jsub.elements) ambient |= std::uint64_t{1} << lg.embed[e];
    int j_ambient = lat.id_of(ambient);
    int j_in_k = local_subgroup_id(*a.group, k_id, kg, j_ambient);
    out.coeffs[kg.group->lattice.conj_class[j_in_k]] += a.coeffs[c];
  }
  return out;
}

BurnsideElement burnside_nm(const BurnsideElement& a, int k_id) {
  const auto& lat = a.group->lattice;
  if (!lat.leq[a.level][k_id]) throw std::invalid_argument("nm: target level not above source");
  if (!a.is_effective()) throw std::invalid_argument("nm: defined on effective elements only");
  auto kg = as_group(a.group, k_id);
  int l_local = local_subgroup_id(*a.group, k_id, kg, a.level);
  GSet x = realize(a);
  GSet coind = coinduce_gset(kg.group, l_local, x);
  return from_gset(a.group, k_id, coind);
}

BurnsideElement cp_norm_closed_form(const GroupPtr& cp, const Int& a) {
  int top = cp->lattice.top_id;
  int p = cp->order;
  if (cp->lattice.num_subgroups() != 2) throw std::invalid_argument("closed form needs C_p");
  Int ap = 1;
  for (int i = 0; i < p; ++i) ap *= a;
  Int tcoeff = (ap - a) / p;
  auto out = burnside_zero(cp, top);
  out.coeffs[0] = Rat(tcoeff);  // class of the free orbit
  out.coeffs[1] = Rat(a);       // a * [C_p/C_p]
  return out;
}

LocalizationReport localization_checks(const GroupPtr& g) {
  LocalizationReport rep;
  const auto& lat = g->lattice;
  // (i) [H/e]([H/K] - [H:K]) = 0 in A(G/H) for all K <= H <= G
  rep.frobenius_identity = true;
  for (int h = 0; h < lat.num_subgroups(); ++h) {
    auto hg = as_group(g, h);
    const auto& hlat = hg.group->lattice;
    auto free_class = burnside_basis(g, h, hlat.conj_class[hlat.trivial_id]);
    for (int c = 0; c < hlat.num_classes(); ++c) {
      int index = hg.group->order / hlat.subgroups[hlat.class_reps[c]].order;
      auto diff = add(burnside_basis(g, h, c), scale(Rat(-index), burnside_one(g, h)));
      auto prod = multiply(free_class, diff);
      for (const auto& v : prod.coeffs) rep.frobenius_identity &= v == 0;
    }
  }
  // (ii) e = [G/e]/|G| is idempotent; marks supported on the trivial class
  int top = lat.top_id;
  auto e = scale(Rat(1, g->order), burnside_basis(g, top, 0));
  auto e2 = multiply(e, e);
  rep.idempotent_square = e2 == e;
  auto marks = marks_of(e);
  rep.idempotent_marks = true;
  for (size_t c = 0; c < marks.size(); ++c) rep.idempotent_marks &= marks[c] == (c == 0 ? 1 : 0);
  // (iii) e A(G/H) ⊗ Q has rank one at every level; |H| res(e) = [H/e]
  rep.trivial_summand_rank1 = true;
  for (int h = 0; h < lat.num_subgroups(); ++h) {
    auto res_e_scaled = burnside_basis(g, h, 0);
    IntMatrix m = multiplication_matrix(res_e_scaled);
    rep.trivial_summand_rank1 &= rank(m) == 1;
  }
  return rep;
}

std::string marks_to_text(const GroupPtr& g, int h_id, bool csv) {
  auto hg = as_group(g, h_id);
  const auto& tom = table_of_marks(g, h_id);
  auto labels = subgroup_labels(*hg.group);
  int nc = tom.m.rows;
  std::ostringstream os;
  if (csv) {
    os << "orbit";
    for (int c = 0; c < nc; ++c) os << ',' << labels[tom.class_reps[c]];
    os << '\n';
    for (int j = 0; j < nc; ++j) {
      os << labels[tom.class_reps[j]];
      for (int c = 0; c < nc; ++c) os << ',' << tom.m.at(j, c);
      os << '\n';
    }
  } else {
    size_t w = 6;
    for (const auto& l : labels) w = std::max(w, l.size() + 1);
    os << std::string(w, ' ');
    for (int c = 0; c < nc; ++c) {
      const std::string& l = labels[tom.class_reps[c]];
      os << std::string(w - l.size(), ' ') << l;
    }
    os << '\n';
    for (int j = 0; j < nc; ++j) {
      const std::string& l = labels[tom.class_reps[j]];
      os << l << std::string(w - l.size(), ' ');
      for (int c = 0; c < nc; ++c) {
        std::ostringstream cell;
        cell << tom.m.at(j, c);
        os << std::string(w - cell.str().size(), ' ') << cell.str();
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace eqalg
