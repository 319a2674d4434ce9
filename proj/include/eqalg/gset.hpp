#pragma once

#include <vector>

#include "eqalg/group.hpp"

namespace eqalg {

/// Finite G-set with a full |G| x size action table and precomputed orbit
/// decomposition. The empty set (size 0) is a valid value.
struct GSet {
  GroupPtr group;
  int size = 0;
  std::vector<int> action;            // action[g * size + x]
  std::vector<int> orbit_ids;         // point -> orbit index
  std::vector<int> orbit_reps;        // orbit -> least point
  std::vector<int> stabilizer_class;  // orbit -> conjugacy class id

  int act(int g, int x) const { return action[g * size + x]; }
  int num_orbits() const { return static_cast<int>(orbit_reps.size()); }
  std::uint64_t stabilizer_mask(int x) const;
  int stabilizer_id(int x) const;
};

/// Equivariant map of G-sets, stored pointwise.
struct GMap {
  GSet source;
  GSet target;
  std::vector<int> f;

  int operator()(int x) const { return f[x]; }
};

/// Build a G-set from an action table; fills in the orbit data. Checks the
/// identity and compatibility laws.
GSet make_gset(GroupPtr g, int size, std::vector<int> action);

GSet empty_gset(GroupPtr g);
GSet point_gset(GroupPtr g);

/// The coset space G/H with left action; point 0 is the coset of the
/// identity, remaining cosets ordered by least element.
GSet make_orbit(const GroupPtr& g, int subgroup_id);

/// Disjoint union; point blocks keep the input order.
GSet disjoint_union(const std::vector<GSet>& parts);

/// The G-set with points drawn from `points` (must be action-stable), in the
/// given order, plus the inclusion into the original.
GMap sub_gset(const GSet& x, const std::vector<int>& points);

bool is_equivariant(const GMap& m);

/// All equivariant maps from a transitive G-set to a transitive G-set; empty
/// when the source stabilizer is not subconjugate to the target's.
std::vector<GMap> hom_orbits(const GSet& source, const GSet& target);

/// All equivariant maps between arbitrary finite G-sets (exponential in the
/// orbit count; intended for small test inputs).
std::vector<GMap> all_gmaps(const GSet& source, const GSet& target);

struct Pullback {
  GSet object;      // pairs (x, y) with f(x) = g(y), ordered lexicographically
  GMap proj_f;      // onto f's source
  GMap proj_g;      // onto g's source
  std::vector<std::pair<int, int>> points;
};

Pullback pullback(const GMap& f, const GMap& g);

struct FixedPoints {
  GSet g_set;       // fixed points with the ambient action
  GMap inclusion;   // into the original set
  QuotientGroup q;  // G/N
  GSet q_set;       // same points with the induced Q-action
};

/// N-fixed points for N normal; the ambient action restricts because N is
/// normal, and factors through Q = G/N.
FixedPoints fixed_points(const GSet& x, int normal_id);

/// Underlying H-set of a G-set.
GSet restrict_gset(const GSet& x, const SubgroupGroup& h);

/// G x_H S for an H-set S; size [G:H] * |S|.
GSet induce_gset(const GroupPtr& g, int subgroup_id, const GSet& s);

/// Coinduction Set^H(G, S): H-equivariant functions G -> S with
/// (g.phi)(x) = phi(xg); size |S|^[G:H].
GSet coinduce_gset(const GroupPtr& g, int subgroup_id, const GSet& s);

struct DependentProduct {
  GSet object;   // pairs (t, sigma), sigma a section of g over h^-1(t)
  GMap h_prime;  // object -> T
  GSet s_times_object;
  GMap f_prime;  // S x_T object -> A, evaluation
  GMap g_prime;  // S x_T object -> object
};

/// Dependent product along h : S -> T of g : A -> S, with the exponential
/// diagram maps.
DependentProduct dependent_product(const GMap& g, const GMap& h);

/// Sorted multiset of stabilizer conjugacy classes; a complete isomorphism
/// invariant of finite G-sets.
std::vector<int> canonical_form(const GSet& x);

bool is_isomorphic(const GSet& x, const GSet& y);

/// Versioned key-value text record {group name, size, action table}; reading
/// requires the matching group.
std::string gset_to_text(const GSet& x);
GSet gset_from_text(const GroupPtr& g, const std::string& text);

}  // namespace eqalg
