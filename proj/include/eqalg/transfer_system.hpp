#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eqalg/group.hpp"

namespace eqalg {

/// Admissibility relation of an indexing category, stored on actual
/// subgroups: (k, h) in rel means the projection G/K -> G/H lies in the
/// category, equivalently H/K is an admissible H-set.
struct TransferSystem {
  GroupPtr group;
  std::vector<std::uint64_t> rel;  // rel[h] = bitmask over subgroup ids k

  bool has(int k, int h) const { return (rel[h] >> k) & 1u; }

  /// Strict pairs (k, h), k != h, sorted; the diagonal is implicit.
  std::vector<std::pair<int, int>> strict_pairs() const;

  /// Deterministic total order key (rel as one bitset, low subgroups first).
  std::vector<std::uint64_t> key() const { return rel; }

  bool operator==(const TransferSystem& o) const { return rel == o.rel; }
  bool subset_of(const TransferSystem& o) const;
};

struct ValidationResult {
  bool ok = true;
  std::string axiom;            // "containment", "reflexive", "transitive",
                                // "conjugation", "restriction"
  std::pair<int, int> witness;  // offending pair
};

ValidationResult validate(const TransferSystem& ts);

TransferSystem trivial_system(const GroupPtr& g);
TransferSystem complete_system(const GroupPtr& g);

/// O^N_gen: pairs (k, h) with N <= k, or N not contained in h.
TransferSystem o_gen(const GroupPtr& g, int normal_id);

/// Build from explicit pairs (must already be a valid system; throws on
/// malformed references or axiom violations).
TransferSystem system_from_pairs(const GroupPtr& g, const std::vector<std::pair<int, int>>& pairs);

/// Smallest valid system containing the given pairs.
TransferSystem closure_system(const GroupPtr& g, const std::vector<std::pair<int, int>>& pairs);

/// All transfer systems, duplicate-free, sorted by relation bitset.
std::vector<TransferSystem> enumerate_systems(const GroupPtr& g);

TransferSystem intersect(const TransferSystem& a, const TransferSystem& b);

/// The induced system on Sub(H); indices are local to as_group(g, h_id).
TransferSystem restrict_to(const TransferSystem& ts, int h_id);

/// True when no strict pair lies below h, i.e. the restriction is trivial.
bool restriction_is_trivial(const TransferSystem& ts, int h_id);

/// The induced system on Q = G/N: pairs (k/N, h/N) with N <= k.
TransferSystem quotient_along(const TransferSystem& ts, int normal_id);

bool is_admissible(const TransferSystem& ts, int k, int h);

/// {h : (e, h) in rel}; checked to be closed under subgroups and conjugation.
std::vector<int> family_f(const TransferSystem& ts);

/// Intersection of {h : (h, G) in rel}; checked to satisfy the minimality
/// properties (admissible, minimal, pulls down through admissibles, normal).
int minimal_admissible_normal(const TransferSystem& ts);

std::string system_to_json(const TransferSystem& ts);
TransferSystem system_from_json(const GroupPtr& g, const std::string& json_text);

}  // namespace eqalg
