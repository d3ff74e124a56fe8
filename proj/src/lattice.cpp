#include "hgm/lattice.hpp"

#include "hgm/error.hpp"

namespace hgm {

namespace {

void row_combine(IntMatrix &a, std::size_t i, std::size_t j, const Int &p, const Int &q, const Int &r,
                 const Int &s) {
  // (row_i, row_j) <- (p row_i + q row_j, r row_i + s row_j)
  for (std::size_t c = 0; c < a.cols(); ++c) {
    Int x = a(i, c), y = a(j, c);
    a(i, c) = p * x + q * y;
    a(j, c) = r * x + s * y;
  }
}

void row_swap(IntMatrix &a, std::size_t i, std::size_t j) {
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void row_axpy(IntMatrix &a, std::size_t dst, const Int &f, std::size_t src) {
  for (std::size_t c = 0; c < a.cols(); ++c) a(dst, c) -= f * a(src, c);
}

} // namespace

IntMatrix hermite_form(const IntMatrix &a0, IntMatrix *u) {
  IntMatrix a = a0;
  IntMatrix U = IntMatrix::identity(a.rows());
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(row, col).get_mpz_t(), a(i, col).get_mpz_t());
      Int x = a(row, col) / g, y = a(i, col) / g;
      // [s t; -y x] has determinant s*x + t*y = 1
      row_combine(a, row, i, s, t, -y, x);
      row_combine(U, row, i, s, t, -y, x);
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) {
      for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) = -a(row, c);
      for (std::size_t c = 0; c < U.cols(); ++c) U(row, c) = -U(row, c);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Int f;
      mpz_fdiv_q(f.get_mpz_t(), a(i, col).get_mpz_t(), a(row, col).get_mpz_t());
      if (f == 0) continue;
      row_axpy(a, i, f, row);
      row_axpy(U, i, f, row);
    }
    ++row;
  }
  if (u) *u = U;
  return a;
}

std::vector<Int> smith_invariants(const IntMatrix &a0) {
  IntMatrix a = a0;
  std::size_t n = a.rows(), m = a.cols();
  std::vector<Int> d;
  for (std::size_t k = 0; k < std::min(n, m); ++k) {
    // find a nonzero entry of least absolute value in the trailing block
    bool any = false;
    for (;;) {
      std::size_t pi = k, pj = k;
      Int best = 0;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < m; ++j)
          if (a(i, j) != 0 && (best == 0 || abs(a(i, j)) < best)) best = abs(a(i, j)), pi = i, pj = j;
      if (best == 0) break;
      any = true;
      row_swap(a, k, pi);
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, pj));
      bool clean = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), a(i, k).get_mpz_t(), a(k, k).get_mpz_t());
        row_axpy(a, i, f, k);
        if (a(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < m; ++j) {
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), a(k, j).get_mpz_t(), a(k, k).get_mpz_t());
        for (std::size_t i = 0; i < n; ++i) a(i, j) -= f * a(i, k);
        if (a(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      // pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = k + 1; i < n && divides; ++i)
        for (std::size_t j = k + 1; j < m; ++j)
          if (a(i, j) % a(k, k) != 0) {
            for (std::size_t c = 0; c < m; ++c) a(k, c) += a(i, c);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (!any) break;
    d.push_back(abs(a(k, k)));
  }
  return d;
}

IntMatrix integer_kernel(const std::vector<Int> &v) {
  std::size_t l = v.size();
  IntMatrix col(l, 1);
  for (std::size_t i = 0; i < l; ++i) col(i, 0) = v[i];
  IntMatrix U;
  IntMatrix h = hermite_form(col, &U);
  std::size_t start = h(0, 0) == 0 ? 0 : 1;
  IntMatrix k(l - start, l);
  for (std::size_t i = start; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) k(i - start, j) = U(i, j);
  return hermite_form(k);
}

IntMatrix complete_to_basis(const std::vector<Int> &c) {
  std::size_t r = c.size();
  IntMatrix col(r, 1);
  for (std::size_t i = 0; i < r; ++i) col(i, 0) = c[i];
  IntMatrix U;
  IntMatrix h = hermite_form(col, &U);
  if (h(0, 0) != 1) throw Error(ErrorKind::InvalidArgument, "vector is not primitive");
  // U c = e1, so the first column of U^{-1} is c
  RatMatrix inv = inverse(to_rat(U));
  IntMatrix w(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (inv(j, i).get_den() != 1) throw Error(ErrorKind::Consistency, "non-unimodular transform");
      w(i, j) = inv(j, i).get_num();
    }
  return w;
}

} // namespace hgm
