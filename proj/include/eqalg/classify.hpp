#pragma once

#include <string>
#include <vector>

#include "eqalg/transfer_system.hpp"

namespace eqalg {

enum class VerdictStatus { Free, NotFlat, Unknown };

/// Outcome of the freeness/flatness test for a pair (O, H), with the four
/// conditions it was decided from.
struct Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  bool restriction_trivial = false;
  bool h_normal = false;
  bool gh_admissible = false;
  bool quotient_solvable = false;  // H normal and G/H solvable
};

/// Pure decision table; exposed so all sixteen condition combinations can be
/// exercised directly.
VerdictStatus verdict_from_conditions(bool restriction_trivial, bool h_normal, bool gh_admissible,
                                      bool quotient_solvable);

Verdict classify_pair(const TransferSystem& o, int h_id);

struct GroupStats {
  long long n = 0;  // transfer systems
  long long t = 0;  // pairs (O, H) over all subgroups
  long long p = 0;  // pairs with a Free verdict
  int d = 0;        // subgroup-lattice depth
  bool solvable = false;
  bool depth_bound_holds = false;  // P * d <= T, checked for solvable groups
};

GroupStats group_stats(const GroupPtr& g);

struct AppendixTable {
  GroupPtr group;
  std::vector<TransferSystem> systems;        // enumeration order
  std::vector<std::vector<bool>> free_cells;  // [row][subgroup id]
};

AppendixTable appendix_table(const GroupPtr& g);

/// Render as "md", "csv" or "txt"; rows carry their strict pairs so the
/// alignment with external tables is self-documenting.
std::string render_appendix(const AppendixTable& table, const std::string& format);

}  // namespace eqalg
