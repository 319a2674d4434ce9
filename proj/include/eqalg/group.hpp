#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace eqalg {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A subgroup, identified by its sorted element set inside the ambient group.
struct Subgroup {
  int id = -1;
  std::vector<int> elements;  // sorted ambient element indices
  std::uint64_t mask = 0;     // bit i set iff element i belongs
  int order = 0;

  bool contains(int e) const { return (mask >> e) & 1u; }
};

/// The full subgroup lattice with conjugacy data. Subgroups are ordered by
/// (order, element list), so ids are stable across runs.
struct SubgroupLattice {
  std::vector<Subgroup> subgroups;
  std::vector<std::vector<bool>> leq;  // leq[k][h]: subgroup k contained in h
  std::vector<int> conj_class;         // subgroup id -> class id
  std::vector<std::vector<int>> classes;
  std::vector<int> class_reps;  // class id -> least subgroup id
  std::vector<bool> normal;
  std::vector<int> normalizer;  // subgroup id of N_G(H)
  std::vector<int> weyl_order;  // |N_G(H)| / |H|
  int depth = 0;                // subgroups in the longest chain e < ... < G
  int trivial_id = 0;
  int top_id = 0;
  std::map<std::uint64_t, int> id_by_mask;

  int id_of(std::uint64_t mask) const { return id_by_mask.at(mask); }
  int num_subgroups() const { return static_cast<int>(subgroups.size()); }
  int num_classes() const { return static_cast<int>(class_reps.size()); }
};

/// A subgroup repackaged as a standalone group. embed maps local element
/// indices to ambient ones.
struct SubgroupGroup {
  GroupPtr group;
  std::vector<int> embed;
};

/// A quotient group together with the projection on elements.
struct QuotientGroup {
  GroupPtr group;
  std::vector<int> project;  // ambient element -> quotient element
};

/// Finite group given by its full multiplication table. Element 0 is the
/// identity. Orders up to 60 are supported (element sets fit in a 64-bit
/// mask). The subgroup lattice is computed at construction.
class FiniteGroup {
 public:
  std::string name;
  int order = 0;
  SubgroupLattice lattice;

  int mul(int a, int b) const { return mul_[a * order + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  std::uint64_t conj_mask(int g, std::uint64_t m) const;
  const std::vector<int>& mul_table() const { return mul_; }

  int element_order(int a) const;

  static GroupPtr from_table(const std::string& name, std::vector<int> mul);

 private:
  std::vector<int> mul_;
  std::vector<int> inv_;

  mutable std::mutex cache_mutex_;
  mutable std::map<int, SubgroupGroup> subgroup_cache_;
  mutable std::map<int, QuotientGroup> quotient_cache_;

  friend SubgroupGroup as_group(const GroupPtr&, int);
  friend QuotientGroup quotient_group(const GroupPtr&, int);
};

/// Parse a group descriptor: C<n>, C<a>xC<b>[x...], D<n> (dihedral of order
/// n, n even >= 4), Q8, S<n> for n <= 4. Throws std::invalid_argument on
/// malformed or unsupported descriptors.
GroupPtr build_group(const std::string& spec);

/// Recompute the lattice of an existing table (exposed for tests; group
/// construction already fills FiniteGroup::lattice).
SubgroupLattice subgroup_lattice(const FiniteGroup& g);

/// H as a group in its own right, memoized per ambient group.
SubgroupGroup as_group(const GroupPtr& g, int subgroup_id);

/// G/N for N normal; throws std::invalid_argument otherwise. Elements of the
/// quotient are numbered by least coset representative.
QuotientGroup quotient_group(const GroupPtr& g, int normal_id);

/// Derived series reaches the trivial subgroup.
bool is_solvable(const FiniteGroup& g);

/// Subgroup id in as_group(g, h) of a subgroup k <= h of the ambient group.
int local_subgroup_id(const FiniteGroup& g, int h_id, const SubgroupGroup& hgrp, int k_id);

/// Subgroup id in quotient_group(g, n) of k/n for n <= k.
int quotient_subgroup_id(const FiniteGroup& g, const QuotientGroup& q, int k_id);

/// Ambient subgroup id of the preimage of a quotient subgroup.
int preimage_subgroup_id(const FiniteGroup& g, const QuotientGroup& q, int qk_id);

/// Short display labels: "e" for the trivial subgroup, the group name for the
/// top, cyclic/dihedral/... names otherwise, disambiguated with _1, _2, ...
std::vector<std::string> subgroup_labels(const FiniteGroup& g);

/// Versioned key-value text record {name, order, mul table}.
std::string group_to_text(const FiniteGroup& g);
GroupPtr group_from_text(const std::string& text);

}  // namespace eqalg
