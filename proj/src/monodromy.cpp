#include "hgm/monodromy.hpp"

#include "hgm/error.hpp"
#include "hgm/hodge.hpp"

#include <algorithm>
#include <set>
#include <type_traits>

namespace hgm {

const char *classification_name(Classification c) {
  return c == Classification::Orthogonal ? "orthogonal" : "symplectic";
}

RatMatrix companion(const IntPoly &f) {
  std::size_t n = f.size() - 1;
  if (f.empty() || f.back() != 1) throw Error(ErrorKind::InvalidArgument, "companion of non-monic polynomial");
  RatMatrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -f[i];
  return c;
}

namespace {

RatMatrix companion_inverse(const IntPoly &f) {
  std::size_t n = f.size() - 1;
  if (f[0] == 0) throw Error(ErrorKind::Degenerate, "companion matrix is singular");
  RatMatrix c(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) c(i, i + 1) = 1;
  for (std::size_t r = 0; r < n; ++r) c(r, 0) = Rat(-f[r + 1]) / Rat(f[0]);
  return c;
}

IntMatrix to_int(const RatMatrix &m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw Error(ErrorKind::Consistency, "non-integral monodromy matrix");
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

} // namespace

LeveltTriple levelt(const FamilyParameter &f) {
  // h_inf and h_0^{-1} are companion matrices in the same basis, so they differ in one column
  RatMatrix cinf = companion(q_infinity(f));
  RatMatrix c0 = companion(q_zero(f));
  LeveltTriple t;
  t.h_inf = cinf;
  t.h_0 = companion_inverse(q_zero(f));
  t.h_1 = companion_inverse(q_infinity(f)) * c0;
  return t;
}

namespace {

struct Overflow {};

// i64 with overflow detection, so the exact checks can run without GMP in the common case
struct Checked {
  i64 v = 0;
  Checked() = default;
  Checked(i64 x) : v(x) {}
  friend Checked operator+(Checked a, Checked b) {
    i64 r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator-(Checked a, Checked b) {
    i64 r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator*(Checked a, Checked b) {
    i64 r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator/(Checked a, Checked b) { return a.v / b.v; }
  friend Checked operator%(Checked a, Checked b) { return a.v % b.v; }
  Checked &operator+=(Checked o) { return *this = *this + o; }
  Checked &operator-=(Checked o) { return *this = *this - o; }
  bool operator==(const Checked &o) const { return v == o.v; }
  bool operator!=(const Checked &o) const { return v != o.v; }
};

template <class T> std::vector<T> charpoly(const Matrix<T> &a) {
  // Faddeev-LeVerrier; the divisions by k are exact over Z
  std::size_t n = a.rows();
  std::vector<T> c(n + 1, T(0));
  c[n] = 1;
  Matrix<T> m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    T tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) tr += a(i, j) * m(j, i);
    T kk = static_cast<long>(k);
    if (tr % kk != 0) throw Error(ErrorKind::Consistency, "non-integral characteristic polynomial");
    c[n - k] = T(0) - tr / kk;
  }
  return c;
}

template <class T> Matrix<T> convert(const RatMatrix &m) {
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw Error(ErrorKind::Consistency, "non-integral monodromy matrix");
      if constexpr (std::is_same_v<T, Int>) out(i, j) = m(i, j).get_num();
      else {
        if (!m(i, j).get_num().fits_slong_p()) throw Overflow{};
        out(i, j) = m(i, j).get_num().get_si();
      }
    }
  return out;
}

template <class T> bool same(const std::vector<T> &a, const IntPoly &b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (std::is_same_v<T, Int>) {
      if (a[i] != b[i]) return false;
    } else if (Int(static_cast<long>(a[i].v)) != b[i])
      return false;
  }
  return true;
}

template <class T> std::string check_levelt_impl(const FamilyParameter &f, const LeveltTriple &t) {
  std::size_t n = f.n;
  auto hinf = convert<T>(t.h_inf), h1 = convert<T>(t.h_1), h0 = convert<T>(t.h_0);
  auto h0inv = hinf * h1;
  if (!(h0inv * h0 == Matrix<T>::identity(n))) return "h_inf*h_1*h_0 != I";
  if (rank(h1 - Matrix<T>::identity(n)) != 1) return "rank(h_1 - I) != 1";
  T det = determinant(h1);
  if (!same(std::vector<T>{det}, IntPoly{Int(f.q_at_zero)})) return "det(h_1) != q(0)";
  if (!same(charpoly(hinf), q_infinity(f))) return "charpoly(h_inf) != q_inf";
  if (!same(charpoly(h0inv), q_zero(f))) return "charpoly(h_0^-1) != q_0";
  return {};
}

} // namespace

std::string check_levelt(const FamilyParameter &f, const LeveltTriple &t) {
  try {
    return check_levelt_impl<Checked>(f, t);
  } catch (const Overflow &) {
    return check_levelt_impl<Int>(f, t);
  }
}

Classification classify(const FamilyParameter &f) {
  LeveltTriple t = levelt(f);
  Rat d = determinant(t.h_1);
  Classification c = d == 1 ? Classification::Symplectic : Classification::Orthogonal;
  if (d != 1 && d != -1) throw Error(ErrorKind::Consistency, "det(h_1) is not +-1");
  bool odd = hodge_vector(f).w % 2 != 0;
  if (odd != (c == Classification::Symplectic))
    throw Error(ErrorKind::Consistency, "weight parity disagrees with det(h_1)");
  return c;
}

int drop_rank_matrix(const FamilyParameter &f, Cusp cusp, i64 k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be nonzero");
  LeveltTriple t = levelt(f);
  const RatMatrix &h = cusp == Cusp::Zero ? t.h_0 : t.h_inf;
  RatMatrix hk = h.pow(static_cast<unsigned long>(k < 0 ? -k : k));
  return static_cast<int>(rank(hk - RatMatrix::identity(f.n)));
}

int drop_rank_eigen(const FamilyParameter &f, Cusp cusp, i64 k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be nonzero");
  if (k < 0) k = -k;
  // companion matrices are cyclic: each distinct eigenvalue has one Jordan block,
  // so the kernel of h^k - I has one dimension per distinct root with lambda^k = 1
  const auto &side = cusp == Cusp::Zero ? f.cyc.beta_side : f.cyc.alpha_side;
  std::set<i64> distinct(side.begin(), side.end());
  i64 fixed = 0;
  for (i64 d : distinct)
    if (k % d == 0) fixed += totient(d);
  return f.n - static_cast<int>(fixed);
}

int drop_rank(const FamilyParameter &f, Cusp cusp, i64 k) {
  int a = drop_rank_matrix(f, cusp, k);
  int b = drop_rank_eigen(f, cusp, k);
  if (a != b) throw Error(ErrorKind::Consistency, "drop_rank paths disagree");
  return a;
}

} // namespace hgm
