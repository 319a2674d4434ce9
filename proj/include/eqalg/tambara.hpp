#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "eqalg/gset.hpp"
#include "eqalg/intlin.hpp"
#include "eqalg/transfer_system.hpp"

namespace eqalg {

/// A middle leg of a polynomial violates the governing transfer system.
struct InadmissibleNorm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Canonical basis vector of P(X, Y)^+: the class of a bispan
/// [X <- A -> G/J -> Y] with transitive middle, encoded by the basepoint
/// stabilizer J, the image point y = h(basepoint), and the multiset of
/// (stabilizer, image-in-X) classes of the fiber of A over the basepoint.
/// Stored G-conjugation-minimal, so equality is diagram isomorphism.
struct PolyClass {
  int j = -1;
  int y = -1;
  std::vector<std::pair<int, int>> pairs;  // sorted (L id, w point) classes
  int exponent_size = 0;                   // |A|

  auto operator<=>(const PolyClass&) const = default;
};

using PolyVector = std::map<PolyClass, Int>;

/// Concrete polynomial diagram [source <- a -> b -> target], maps pointwise.
struct RawPoly {
  GSet source;
  GSet target;
  GSet a;
  GSet b;
  std::vector<int> f;  // a -> source
  std::vector<int> g;  // a -> b
  std::vector<int> h;  // b -> target
};

RawPoly r_of(const GMap& f);  // [Y <- X = X = X] for f : X -> Y
RawPoly n_of(const GMap& g);  // [X = X -> Y = Y]
RawPoly t_of(const GMap& h);  // [X = X = X -> Y]

RawPoly zero_poly(const GSet& source, const GSet& target);
RawPoly one_poly(const GSet& source, const GSet& target);

PolyClass canonical_class(const GroupPtr& g, const GSet& source, const GSet& target, int j, int y,
                          std::vector<std::pair<int, int>> raw_pairs);

/// Expand a diagram in the transitive-middle basis. With a transfer system
/// attached, every middle-leg orbit is checked for admissibility.
PolyVector normalize(const RawPoly& p, const TransferSystem* o = nullptr);

/// Realize a basis class as a concrete diagram.
RawPoly realize_class(const GroupPtr& g, const GSet& source, const GSet& target, const PolyClass& c);

/// Composition via the pullback and exponential-diagram rewrite rules.
PolyVector compose(const RawPoly& second, const RawPoly& first, const TransferSystem* o = nullptr);

/// Semiring operations of the polynomial hom-set.
RawPoly poly_add(const RawPoly& x, const RawPoly& y);
RawPoly poly_mul(const RawPoly& x, const RawPoly& y);
PolyVector vector_add(const PolyVector& x, const PolyVector& y);
PolyVector vector_mul(const GroupPtr& g, const GSet& source, const GSet& target, const PolyVector& x,
                      const PolyVector& y, const TransferSystem* o = nullptr);

/// Transfer along j : Y -> Z (post-composition on the last leg), and
/// restriction along k : Z -> Y (the pullback formula).
RawPoly transfer_poly(const RawPoly& p, const GMap& j);
RawPoly restrict_poly(const RawPoly& p, const GMap& k);

/// Weyl-type action: post-compose with an equivariant map of the target.
PolyClass translate_class(const GroupPtr& g, const GSet& source, const GSet& target, const PolyClass& c,
                          const std::vector<int>& target_map);

/// All basis classes at (source, G/level) with |A| <= max_size and all middle
/// legs admissible for o; sorted by (grade, class).
std::vector<PolyClass> poly_basis(const TransferSystem& o, const GSet& source, int level, int max_size);

/// Grade-d class counts at the underlying level G/e, graded by free orbits of
/// the exponent; the expected count is C([G:H] + d - 1, d) independently of o.
struct UnderlyingRingReport {
  std::vector<long long> counts;    // per grade 0..dmax
  std::vector<long long> expected;  // binomial coefficients
  bool counts_match = false;
  bool action_permutes = false;
  bool ok() const { return counts_match && action_permutes; }
};
UnderlyingRingReport underlying_ring_check(const TransferSystem& o, int h_id, int dmax);

/// An element of the Burnside Tambara functor at X: an iso class of G-sets
/// over X.
struct OverSet {
  GSet w;
  std::vector<int> u;  // w -> X
};

/// Canonical form of an object over y: sorted multiset of conjugation classes
/// of (orbit stabilizer, image point).
std::vector<std::pair<int, int>> over_class(const GroupPtr& g, const GSet& y, const OverSet& o);

/// Tambara-functor evaluation of a polynomial on an element: pull back along
/// f, take the dependent product along g, push forward along h.
OverSet eval_poly(const RawPoly& p, const OverSet& elt);

/// Evaluation of an effective basis expansion (sums become disjoint unions).
std::vector<std::pair<int, int>> eval_vector_class(const GroupPtr& g, const GSet& source, const GSet& target,
                                                   const PolyVector& v, const OverSet& elt);

/// Geometric fixed points of a free incomplete Tambara functor: the
/// N-constrained G-side basis against the q_*O basis on T^N, per Q-level,
/// with the witness bijection. Enumeration is capped; grade_used reports the
/// bound actually exhausted on both sides (grade_bound unless the cap hit).
struct GfpTambaraResult {
  QuotientGroup q;
  GSet t_fixed_q;
  bool type_bijection = false;   // pair/level types correspond exactly
  bool class_bijection = false;  // canonical classes correspond at grade_used
  int grade_used = 0;
};
GfpTambaraResult gfp_free_tambara(const GroupPtr& g, const TransferSystem& o, const GSet& t, int normal_id,
                                  int grade_bound, int class_cap = 20000);

}  // namespace eqalg
