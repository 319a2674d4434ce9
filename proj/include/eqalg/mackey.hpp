#pragma once

#include <map>
#include <vector>

#include "eqalg/burnside.hpp"
#include "eqalg/gset.hpp"
#include "eqalg/intlin.hpp"

namespace eqalg {

/// Basis vector of a level of the free Mackey functor on a generator at T:
/// the G-conjugation class of a triple (J, x, y) with x in T^J and y in
/// (G/K)^J, stored as its lexicographically least representative.
struct SpanTriple {
  int j = -1;
  int x = -1;
  int y = -1;
  auto operator<=>(const SpanTriple&) const = default;
};

/// The level A{x_T}(G/K), with its ordered basis.
struct SpanBasis {
  GroupPtr group;
  GSet t;
  int level = -1;  // subgroup id K
  GSet level_orbit;
  std::vector<SpanTriple> basis;  // sorted canonical triples
  std::map<SpanTriple, int> index;

  int rank() const { return static_cast<int>(basis.size()); }
};

SpanTriple canonical_triple(const GroupPtr& g, const GSet& t, const GSet& level_orbit, int j, int x, int y);

SpanBasis span_basis(const GroupPtr& g, const GSet& t, int level);

/// Independent rank computation: orbit counting on raw triples, bypassing
/// canonical representatives.
int span_rank_by_orbit_count(const GroupPtr& g, const GSet& t, int level);

/// Structure-map matrices (rows = target basis, columns = source basis).
IntMatrix span_tr(const SpanBasis& from, const SpanBasis& to);    // level(from) <= level(to)
IntMatrix span_res(const SpanBasis& from, const SpanBasis& to);   // level(to) <= level(from)
IntMatrix span_conj(const SpanBasis& basis, int gamma);           // gamma in N_G(K)
/// Functorial action of u : T -> T on every triple (precomposition with the
/// restriction leg): x -> u(x).
IntMatrix span_translate(const SpanBasis& basis, const GMap& u);

/// Bases of the sub-Mackey functor EF_N of A and of its quotient, per level:
/// local conjugacy classes [H/K] split by whether K contains N.
struct EfLevels {
  std::vector<std::vector<int>> e_basis;       // per subgroup id H: classes with N not <= K
  std::vector<std::vector<int>> etilde_basis;  // classes with N <= K
};
EfLevels ef_levels(const GroupPtr& g, int normal_id);

/// Geometric fixed points of a free Mackey functor: filtered G-side spans
/// (N <= J) against the free Q-side spans on T^N, per Q-level, with an
/// explicit witness bijection.
struct GfpFreeResult {
  QuotientGroup q;
  GSet t_fixed_q;            // T^N as a Q-set
  std::vector<int> q_levels; // Q subgroup ids (all of them)
  std::vector<int> phi_rank; // rank of the filtered G-side basis per Q-level
  std::vector<int> q_rank;   // rank of span_basis over Q per Q-level
  bool bijection = false;    // witness map hits the filtered basis bijectively
};
GfpFreeResult gfp_free(const GroupPtr& g, const GSet& t, int normal_id);

/// Fixed-point Mackey functor of the permutation module Z[X]: bases are
/// H-orbit sums, with restriction/transfer matrices.
struct FpLevels {
  GroupPtr group;
  GSet x;
  std::vector<std::vector<int>> orbit_reps;  // per subgroup id: H-orbit representatives

  int rank(int h_id) const { return static_cast<int>(orbit_reps[h_id].size()); }
};
FpLevels fp_permutation_module(const GroupPtr& g, const GSet& x);
IntMatrix fp_res(const FpLevels& fp, int from_h, int to_k);  // K <= H
IntMatrix fp_tr(const FpLevels& fp, int from_k, int to_h);   // K <= H

/// Level ranks of the inflation of the free Q-Mackey functor on s_over_q:
/// zero off the family, the Q-rank at H/N otherwise.
std::vector<int> inflate_free_ranks(const GroupPtr& g, int normal_id, const GSet& s_over_q);

/// Base change of A{x_T} to the constant Mackey functor, level by level:
/// span basis modulo [H:K] x - tr res x, with the fixed-point comparison.
struct ZBaseChangeLevel {
  int level = -1;
  CokernelShape shape;
  int fp_rank = 0;
  bool free_of_expected_rank = false;
};
std::vector<ZBaseChangeLevel> z_base_change_free(const GroupPtr& g, const GSet& t);

/// Levelwise exactness of the two four-term sequences relating the constant
/// functor, its dual, A, and A{x_{C_p}}.
struct CpResolutionReport {
  bool seq1_top = false, seq1_bottom = false;
  bool seq2_top = false, seq2_bottom = false;
  bool middle_composites_zero = false;
  bool all() const { return seq1_top && seq1_bottom && seq2_top && seq2_bottom && middle_composites_zero; }
};
CpResolutionReport verify_cp_resolutions(int p);

/// Restriction of a free Mackey functor: the expected H-set generator plus
/// the rank cross-check at every level of H.
struct FreeChangeOfGroup {
  GSet expected_gen;
  std::vector<int> lhs_ranks;
  std::vector<int> rhs_ranks;
  bool match = false;
};
FreeChangeOfGroup restrict_free(const GroupPtr& g, const GSet& t, int h_id);
/// Norm of a free H-Mackey functor: coinduced generator plus rank checks of
/// the G-side span bases against independent orbit counting.
FreeChangeOfGroup norm_free(const GroupPtr& g, int h_id, const GSet& t_over_h);

}  // namespace eqalg
