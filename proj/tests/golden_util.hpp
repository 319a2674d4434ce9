#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqalg/classify.hpp"

namespace eqalg::testing {

struct GoldenRow {
  std::vector<std::pair<int, int>> pairs;  // strict pairs by subgroup id
  std::vector<bool> cells;
};

inline std::vector<GoldenRow> load_golden(const std::string& path, const FiniteGroup& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing golden file: " + path);
  auto labels = subgroup_labels(g);
  std::map<std::string, int> id_of;
  for (size_t i = 0; i < labels.size(); ++i) id_of[labels[i]] = static_cast<int>(i);
  std::vector<GoldenRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    if (bar == std::string::npos) throw std::runtime_error("bad golden line: " + line);
    GoldenRow row;
    std::string pairs = line.substr(0, bar);
    std::istringstream ps(pairs);
    std::string tok;
    while (std::getline(ps, tok, ';')) {
      if (tok.empty()) continue;
      auto lt = tok.find('<');
      row.pairs.emplace_back(id_of.at(tok.substr(0, lt)), id_of.at(tok.substr(lt + 1)));
    }
    std::sort(row.pairs.begin(), row.pairs.end());
    std::string cells = line.substr(bar + 1);
    std::istringstream cs(cells);
    while (std::getline(cs, tok, ',')) row.cells.push_back(tok == "free");
    while (row.cells.size() < labels.size()) row.cells.push_back(false);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Cell-for-cell comparison after aligning golden rows (paper order) with the
/// enumerated systems via their strict-pair sets. Each system must be matched
/// exactly once.
inline bool appendix_matches_golden(const AppendixTable& table, const std::vector<GoldenRow>& rows,
                                    std::string* detail = nullptr) {
  if (rows.size() != table.systems.size()) {
    if (detail) *detail = "row count mismatch";
    return false;
  }
  std::vector<bool> used(table.systems.size(), false);
  for (size_t r = 0; r < rows.size(); ++r) {
    int found = -1;
    for (size_t s = 0; s < table.systems.size(); ++s) {
      if (used[s]) continue;
      if (table.systems[s].strict_pairs() == rows[r].pairs) {
        found = static_cast<int>(s);
        break;
      }
    }
    if (found < 0) {
      if (detail) *detail = "golden row " + std::to_string(r) + " has no matching system";
      return false;
    }
    used[found] = true;
    for (size_t h = 0; h < rows[r].cells.size(); ++h)
      if (table.free_cells[found][h] != rows[r].cells[h]) {
        if (detail)
          *detail = "cell mismatch at golden row " + std::to_string(r) + ", column " + std::to_string(h);
        return false;
      }
  }
  return true;
}

}  // namespace eqalg::testing
