#pragma once

#include <string>
#include <vector>

#include "eqalg/gset.hpp"
#include "eqalg/intlin.hpp"

namespace eqalg {

/// Table of marks of H: entry (J-class row, K-class column) = |(H/J)^K|,
/// with conjugacy classes ordered as in the lattice of H-as-a-group. Lower
/// triangular with diagonal |W_H(J)|.
struct TableOfMarks {
  std::vector<int> class_reps;  // local class rep subgroup ids
  IntMatrix m;
};

/// Marks of the Burnside ring of the group itself (level H = top). Memoized
/// behind a synchronized cache.
const TableOfMarks& table_of_marks_of_group(const GroupPtr& k);

/// table_of_marks(G, H): marks of A(G/H), i.e. of H as a group.
const TableOfMarks& table_of_marks(const GroupPtr& g, int h_id);

/// Element of A(G/H): rational coefficient per conjugacy class of subgroups
/// of H. Integral elements are the actual Burnside ring.
struct BurnsideElement {
  GroupPtr group;
  int level = -1;            // ambient subgroup id H
  std::vector<Rat> coeffs;   // in H-local class order

  bool is_integral() const;
  bool is_effective() const;  // nonnegative integers
  bool operator==(const BurnsideElement& o) const { return level == o.level && coeffs == o.coeffs; }
};

BurnsideElement burnside_zero(const GroupPtr& g, int h_id);
BurnsideElement burnside_one(const GroupPtr& g, int h_id);  // [H/H]
/// [H/J] for a local class index.
BurnsideElement burnside_basis(const GroupPtr& g, int h_id, int local_class);

/// Class of an H-set (the H given as as_group(g, h_id)).
BurnsideElement from_gset(const GroupPtr& g, int h_id, const GSet& x);

/// Realize an effective element as an H-set.
GSet realize(const BurnsideElement& a);

BurnsideElement add(const BurnsideElement& a, const BurnsideElement& b);
BurnsideElement negate(const BurnsideElement& a);
BurnsideElement scale(const Rat& c, const BurnsideElement& a);
/// Product via pointwise marks; exact.
BurnsideElement multiply(const BurnsideElement& a, const BurnsideElement& b);

/// Fixed-point counts per class of subgroups of H.
std::vector<Rat> marks_of(const BurnsideElement& a);
BurnsideElement from_marks(const GroupPtr& g, int h_id, const std::vector<Rat>& marks);

/// Matrix of multiplication by a on the class basis of A(G/level(a));
/// requires a integral.
IntMatrix multiplication_matrix(const BurnsideElement& a);

/// res^H_K along K <= H.
BurnsideElement burnside_res(const BurnsideElement& a, int k_id);
/// tr_K^H into K >= level(a); on the basis, [L/J] -> [K/J].
BurnsideElement burnside_tr(const BurnsideElement& a, int k_id);
/// nm_K^H into K >= level(a) by coinduction; effective elements only.
BurnsideElement burnside_nm(const BurnsideElement& a, int k_id);

/// nm_e^{C_p}(a) = a + ((a^p - a)/p) t at the top level of C_p; valid for
/// any integer a.
BurnsideElement cp_norm_closed_form(const GroupPtr& cp, const Int& a);

struct LocalizationReport {
  bool frobenius_identity = false;   // [H/e]([H/K] - [H:K]) = 0 for all K <= H <= G
  bool idempotent_square = false;    // e = [G/e]/|G| satisfies e^2 = e
  bool idempotent_marks = false;     // phi_H(e) = 1 iff H = e
  bool trivial_summand_rank1 = false;  // e A(G/H) ⊗ Q has rank 1 at every level
  bool all() const { return frobenius_identity && idempotent_square && idempotent_marks && trivial_summand_rank1; }
};

LocalizationReport localization_checks(const GroupPtr& g);

/// Text rendering of the table of marks (CSV or aligned columns).
std::string marks_to_text(const GroupPtr& g, int h_id, bool csv);

}  // namespace eqalg
