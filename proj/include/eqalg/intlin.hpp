#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace eqalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Dense exact integer matrix.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMatrix identity(int n);
  static IntMatrix zero(int r, int c) { return IntMatrix(r, c); }

  bool operator==(const IntMatrix& o) const = default;
};

IntMatrix matmul(const IntMatrix& x, const IntMatrix& y);
IntMatrix matadd(const IntMatrix& x, const IntMatrix& y);
IntMatrix scale(const Int& c, const IntMatrix& x);
IntMatrix transpose(const IntMatrix& x);
IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);

struct SmithResult {
  IntMatrix u;  // rows x rows, unimodular
  IntMatrix d;  // diagonal, d1 | d2 | ...
  IntMatrix v;  // cols x cols, unimodular
};

/// u * m * v = d with the divisibility chain on the diagonal.
SmithResult smith_normal_form(const IntMatrix& m);

int rank(const IntMatrix& m);

/// Nonzero diagonal entries of the Smith form, in chain order, positive.
std::vector<Int> elementary_divisors(const IntMatrix& m);

/// Invariant factors of coker(m) acting on Z^rows: the divisors > 1, plus a
/// free rank.
struct CokernelShape {
  std::vector<Int> torsion;  // invariant factors > 1
  int free_rank = 0;
};
CokernelShape cokernel_shape(const IntMatrix& m);

/// Exactness of Z^a -> Z^b -> Z^c at the middle: the composite vanishes,
/// ranks fill the middle, and the image of the first map is saturated.
bool exactness_check(const IntMatrix& first, const IntMatrix& second);

/// Exact determinant (Bareiss fraction-free elimination).
Int determinant(const IntMatrix& m);

}  // namespace eqalg
