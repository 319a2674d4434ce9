#include "eqalg/classify.hpp"

#include <sstream>

namespace eqalg {

VerdictStatus verdict_from_conditions(bool restriction_trivial, bool h_normal, bool gh_admissible,
                                      bool quotient_solvable) {
  if (restriction_trivial && h_normal && gh_admissible) return VerdictStatus::Free;
  if (!restriction_trivial || !h_normal) return VerdictStatus::NotFlat;
  // necessary conditions hold but G/H is not admissible
  if (quotient_solvable) return VerdictStatus::NotFlat;
  return VerdictStatus::Unknown;
}

Verdict classify_pair(const TransferSystem& o, int h_id) {
  const auto& g = o.group;
  const auto& lat = g->lattice;
  Verdict v;
  v.restriction_trivial = restriction_is_trivial(o, h_id);
  v.h_normal = lat.normal.at(h_id);
  v.gh_admissible = o.has(h_id, lat.top_id);
  v.quotient_solvable = v.h_normal && is_solvable(*quotient_group(g, h_id).group);
  v.status = verdict_from_conditions(v.restriction_trivial, v.h_normal, v.gh_admissible, v.quotient_solvable);
  return v;
}

GroupStats group_stats(const GroupPtr& g) {
  GroupStats st;
  auto systems = enumerate_systems(g);
  int ns = g->lattice.num_subgroups();
  st.n = static_cast<long long>(systems.size());
  st.t = st.n * ns;
  for (const auto& o : systems)
    for (int h = 0; h < ns; ++h)
      if (classify_pair(o, h).status == VerdictStatus::Free) ++st.p;
  st.d = g->lattice.depth;
  st.solvable = is_solvable(*g);
  st.depth_bound_holds = !st.solvable || st.p * st.d <= st.t;
  return st;
}

AppendixTable appendix_table(const GroupPtr& g) {
  AppendixTable table;
  table.group = g;
  table.systems = enumerate_systems(g);
  int ns = g->lattice.num_subgroups();
  for (const auto& o : table.systems) {
    std::vector<bool> row(ns, false);
    for (int h = 0; h < ns; ++h) row[h] = classify_pair(o, h).status == VerdictStatus::Free;
    table.free_cells.push_back(std::move(row));
  }
  return table;
}

std::string render_appendix(const AppendixTable& table, const std::string& format) {
  const auto& g = *table.group;
  auto labels = subgroup_labels(g);
  int ns = g.lattice.num_subgroups();
  auto pair_text = [&](const TransferSystem& o) {
    std::ostringstream os;
    bool first = true;
    for (auto [k, h] : o.strict_pairs()) {
      if (!first) os << ';';
      os << labels[k] << '<' << labels[h];
      first = false;
    }
    return os.str();
  };
  std::ostringstream os;
  if (format == "csv") {
    os << "system";
    for (int h = 0; h < ns; ++h) os << ',' << g.name << '/' << labels[h];
    os << '\n';
    for (size_t r = 0; r < table.systems.size(); ++r) {
      os << '"' << pair_text(table.systems[r]) << '"';
      for (int h = 0; h < ns; ++h) os << ',' << (table.free_cells[r][h] ? "free" : "");
      os << '\n';
    }
  } else if (format == "md") {
    os << "| system |";
    for (int h = 0; h < ns; ++h) os << ' ' << g.name << '/' << labels[h] << " |";
    os << "\n|---|";
    for (int h = 0; h < ns; ++h) os << "---|";
    os << '\n';
    for (size_t r = 0; r < table.systems.size(); ++r) {
      os << "| {" << pair_text(table.systems[r]) << "} |";
      for (int h = 0; h < ns; ++h) os << ' ' << (table.free_cells[r][h] ? "free" : " ") << " |";
      os << '\n';
    }
  } else {
    size_t w = 0;
    for (size_t r = 0; r < table.systems.size(); ++r) w = std::max(w, pair_text(table.systems[r]).size());
    w += 2;
    os << std::string(w, ' ');
    for (int h = 0; h < ns; ++h) {
      std::string col = g.name + "/" + labels[h];
      os << ' ' << col;
    }
    os << '\n';
    for (size_t r = 0; r < table.systems.size(); ++r) {
      std::string p = pair_text(table.systems[r]);
      os << p << std::string(w - p.size(), ' ');
      for (int h = 0; h < ns; ++h) {
        std::string col = g.name + "/" + labels[h];
        std::string cell = table.free_cells[r][h] ? "free" : "";
        os << ' ' << cell << std::string(col.size() - cell.size(), ' ');
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace eqalg
