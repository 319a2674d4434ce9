#include "eqalg/intlin.hpp"

#include <algorithm>
#include <stdexcept>

namespace eqalg {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: dimension mismatch");
  IntMatrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return z;
}

IntMatrix matadd(const IntMatrix& x, const IntMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matadd: dimension mismatch");
  IntMatrix z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

IntMatrix scale(const Int& c, const IntMatrix& x) {
  IntMatrix z = x;
  for (auto& v : z.a) v *= c;
  return z;
}

IntMatrix transpose(const IntMatrix& x) {
  IntMatrix z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
  return z;
}

IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols != bottom.cols) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix z(top.rows + bottom.rows, top.cols);
  std::copy(top.a.begin(), top.a.end(), z.a.begin());
  std::copy(bottom.a.begin(), bottom.a.end(), z.a.begin() + top.a.size());
  return z;
}

namespace {

// extended gcd: returns g and Bezout coefficients with u*a + v*b = g >= 0
Int egcd(const Int& a, const Int& b, Int& u, Int& v) {
  Int r0 = a, r1 = b, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int u2 = u0 - q * u1;
    Int v2 = v0 - q * v1;
    r0 = r1;
    r1 = r2;
    u0 = u1;
    u1 = u2;
    v0 = v1;
    v1 = v2;
  }
  if (r0 < 0) {
    r0 = -r0;
    u0 = -u0;
    v0 = -v0;
  }
  u = u0;
  v = v0;
  return r0;
}

struct Worker {
  IntMatrix d, u, v;

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  void negate_row(int i) {
    for (int c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
  }
  // row_i -= q * row_j
  void row_sub(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < d.cols; ++c) d.at(i, c) -= q * d.at(j, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) -= q * u.at(j, c);
  }
  // unimodular 2x2 transform on rows (t, i): afterwards d(t,t) = gcd and
  // d(i,t) = 0; one step per entry keeps the fill-in bounded
  void row_gcd(int t, int i) {
    Int a = d.at(t, t), b = d.at(i, t);
    if (b == 0) return;
    if (a != 0 && b % a == 0) {
      row_sub(i, t, b / a);
      return;
    }
    Int x, y;
    Int g = egcd(a, b, x, y);
    Int as = a / g, bs = b / g;
    for (int c = 0; c < d.cols; ++c) {
      Int top = x * d.at(t, c) + y * d.at(i, c);
      Int bot = -bs * d.at(t, c) + as * d.at(i, c);
      d.at(t, c) = top;
      d.at(i, c) = bot;
    }
    for (int c = 0; c < u.cols; ++c) {
      Int top = x * u.at(t, c) + y * u.at(i, c);
      Int bot = -bs * u.at(t, c) + as * u.at(i, c);
      u.at(t, c) = top;
      u.at(i, c) = bot;
    }
  }
  void col_gcd(int t, int j) {
    Int a = d.at(t, t), b = d.at(t, j);
    if (b == 0) return;
    if (a != 0 && b % a == 0) {
      Int q = b / a;
      for (int r = 0; r < d.rows; ++r) d.at(r, j) -= q * d.at(r, t);
      for (int r = 0; r < v.rows; ++r) v.at(r, j) -= q * v.at(r, t);
      return;
    }
    Int x, y;
    Int g = egcd(a, b, x, y);
    Int as = a / g, bs = b / g;
    for (int r = 0; r < d.rows; ++r) {
      Int left = x * d.at(r, t) + y * d.at(r, j);
      Int right = -bs * d.at(r, t) + as * d.at(r, j);
      d.at(r, t) = left;
      d.at(r, j) = right;
    }
    for (int r = 0; r < v.rows; ++r) {
      Int left = x * v.at(r, t) + y * v.at(r, j);
      Int right = -bs * v.at(r, t) + as * v.at(r, j);
      v.at(r, t) = left;
      v.at(r, j) = right;
    }
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
  Worker w;
  w.d = m;
  w.u = IntMatrix::identity(m.rows);
  w.v = IntMatrix::identity(m.cols);
  int t = 0;
  int nmin = std::min(m.rows, m.cols);
  while (t < nmin) {
    // pivot: minimal nonzero absolute value in the trailing block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < m.rows; ++i)
      for (int j = t; j < m.cols; ++j) {
        if (w.d.at(i, j) == 0) continue;
        Int v = abs(w.d.at(i, j));
        if (pi < 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    bool clean = false;
    while (!clean) {
      for (int i = t + 1; i < m.rows; ++i) w.row_gcd(t, i);
      for (int j = t + 1; j < m.cols; ++j) w.col_gcd(t, j);
      clean = true;
      for (int i = t + 1; i < m.rows; ++i) clean &= w.d.at(i, t) == 0;
      for (int j = t + 1; j < m.cols; ++j) clean &= w.d.at(t, j) == 0;
    }
    if (w.d.at(t, t) < 0) w.negate_row(t);
    // enforce divisibility: fold any non-multiple into the pivot's row
    bool redo = false;
    for (int i = t + 1; i < m.rows && !redo; ++i)
      for (int j = t + 1; j < m.cols && !redo; ++j)
        if (w.d.at(i, j) % w.d.at(t, t) != 0) {
          w.row_sub(t, i, Int(-1));  // add row i to row t
          redo = true;
        }
    if (!redo) ++t;
  }
  return {std::move(w.u), std::move(w.d), std::move(w.v)};
}

int rank(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  int r = 0;
  for (int i = 0; i < std::min(m.rows, m.cols); ++i)
    if (s.d.at(i, i) != 0) ++r;
  return r;
}

std::vector<Int> elementary_divisors(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  std::vector<Int> out;
  for (int i = 0; i < std::min(m.rows, m.cols); ++i)
    if (s.d.at(i, i) != 0) out.push_back(abs(s.d.at(i, i)));
  return out;
}

CokernelShape cokernel_shape(const IntMatrix& m) {
  CokernelShape shape;
  auto divs = elementary_divisors(m);
  for (const auto& d : divs)
    if (d > 1) shape.torsion.push_back(d);
  shape.free_rank = m.rows - static_cast<int>(divs.size());
  return shape;
}

bool exactness_check(const IntMatrix& first, const IntMatrix& second) {
  if (second.cols != first.rows) throw std::invalid_argument("exactness_check: maps do not compose");
  IntMatrix comp = matmul(second, first);
  for (const auto& v : comp.a)
    if (v != 0) return false;
  auto divs = elementary_divisors(first);
  if (static_cast<int>(divs.size()) + rank(second) != second.cols) return false;
  for (const auto& d : divs)
    if (d != 1) return false;
  return true;
}

Int determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant: square matrix required");
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

}  // namespace eqalg
