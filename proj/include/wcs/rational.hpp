#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wcs {

using Rational = mpq_class;
using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

inline Rational rat(long p, long q = 1) {
  Rational x(p, q);
  x.canonicalize();
  return x;
}

inline Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  if (t.empty()) throw std::invalid_argument("empty rational");
  Rational x;
  if (x.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  x.canonicalize();
  if (x.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return x;
}

inline std::string to_string(const Rational& x) {
  return x.get_den() == 1 ? x.get_num().get_str() : x.get_str();
}

inline std::string to_string(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

inline RatVec zeros(std::size_t n) { return RatVec(n, Rational(0)); }

inline RatVec unit(std::size_t n, std::size_t i) {
  RatVec v = zeros(n);
  v.at(i) = 1;
  return v;
}

inline RatVec ints(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline void check_dims(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("vector lengths " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
}

inline Rational dot(const RatVec& a, const RatVec& b) {
  check_dims(a, b);
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
  check_dims(a, b);
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
  check_dims(a, b);
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline RatVec operator-(const RatVec& a) {
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

inline RatVec operator*(const Rational& s, const RatVec& a) {
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

inline bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

inline int sign(const Rational& x) { return sgn(x); }

inline Rational sum(const RatVec& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

inline RatMatrix identity(std::size_t n) {
  RatMatrix m(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RatMatrix transpose(const RatMatrix& a, std::size_t cols_if_empty = 0) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : cols_if_empty;
  RatMatrix t(cols, zeros(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

inline RatVec matvec(const RatMatrix& a, const RatVec& x) {
  RatVec y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = dot(a[i], x);
  return y;
}

inline RatVec vecmat(const RatVec& x, const RatMatrix& a) {
  if (x.size() != a.size()) throw DimensionMismatch("vecmat");
  std::size_t cols = a.empty() ? 0 : a[0].size();
  RatVec y = zeros(cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) y[j] += x[i] * a[i][j];
  return y;
}

inline RatMatrix matmul(const RatMatrix& a, const RatMatrix& b) {
  std::size_t inner = b.size();
  std::size_t cols = inner ? b[0].size() : 0;
  RatMatrix c(a.size(), zeros(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw DimensionMismatch("matmul");
    for (std::size_t k = 0; k < inner; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

struct Echelon {
  RatMatrix rows;
  std::vector<std::size_t> pivots;
};

// reduced row echelon form; zero rows dropped
inline Echelon rref(RatMatrix m, std::size_t cols_if_empty = 0) {
  std::size_t cols = m.empty() ? cols_if_empty : m[0].size();
  for (const auto& r : m)
    if (r.size() != cols) throw DimensionMismatch("ragged matrix");
  Echelon e;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    e.pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  e.rows = std::move(m);
  return e;
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

inline std::size_t rank_of(const std::vector<RatVec>& vs) { return vs.empty() ? 0 : rank(vs); }

// basis of {x : m x = 0}
inline std::vector<RatVec> kernel(const RatMatrix& m, std::size_t cols) {
  Echelon e = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v = zeros(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct AffineSolution {
  RatVec particular;
  std::vector<RatVec> kernel_basis;
};

inline std::optional<AffineSolution> solve_affine(const RatMatrix& a, const RatVec& b,
                                                  std::size_t cols_if_empty = 0) {
  if (a.size() != b.size()) throw DimensionMismatch("solve_affine rows");
  std::size_t cols = a.empty() ? cols_if_empty : a[0].size();
  RatMatrix aug;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != cols) throw DimensionMismatch("ragged matrix");
    RatVec r = a[i];
    r.push_back(b[i]);
    aug.push_back(std::move(r));
  }
  Echelon e = rref(aug, cols + 1);
  if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
  AffineSolution s;
  s.particular = zeros(cols);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) s.particular[e.pivots[i]] = e.rows[i][cols];
  s.kernel_basis = kernel(a, cols);
  return s;
}

inline std::optional<RatVec> solve_unique(const RatMatrix& a, const RatVec& b, std::size_t cols) {
  auto s = solve_affine(a, b, cols);
  if (!s || !s->kernel_basis.empty()) return std::nullopt;
  return s->particular;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
  std::size_t n = a.size();
  RatMatrix aug;
  for (std::size_t i = 0; i < n; ++i) {
    RatVec r = a[i];
    for (std::size_t j = 0; j < n; ++j) r.emplace_back(i == j ? 1 : 0);
    aug.push_back(std::move(r));
  }
  Echelon e = rref(aug, 2 * n);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = RatVec(e.rows[i].begin() + n, e.rows[i].end());
  return inv;
}

// positive multiple with coprime integer entries
inline RatVec primitive(const RatVec& v) {
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> z(v.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    z[i] = v[i].get_num() * (l / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = g == 0 ? Rational(0) : Rational(z[i] / g);
  return out;
}

inline bool is_integral(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.get_den() == 1; });
}

inline bool is_nonnegative(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) >= 0; });
}

// orthogonal projection onto the span of the given vectors
inline RatVec project_onto_span(const RatVec& x, const std::vector<RatVec>& span) {
  if (span.empty()) return zeros(x.size());
  Echelon e = rref(span);
  const auto& b = e.rows;
  std::size_t k = b.size();
  RatMatrix gram(k, zeros(k));
  RatVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(b[i], b[j]);
    rhs[i] = dot(b[i], x);
  }
  auto c = solve_unique(gram, rhs, k);
  if (!c) throw InvariantViolation("singular Gram matrix");
  RatVec p = zeros(x.size());
  for (std::size_t i = 0; i < k; ++i) p = p + (*c)[i] * b[i];
  return p;
}

inline RatVec project_off_span(const RatVec& x, const std::vector<RatVec>& span) {
  return x - project_onto_span(x, span);
}

// canonical basis of a subspace: reduced echelon rows made primitive
inline std::vector<RatVec> canonical_basis(const std::vector<RatVec>& vs, std::size_t n) {
  std::vector<RatVec> out;
  for (auto& r : rref(vs, n).rows) out.push_back(primitive(r));
  return out;
}

}  // namespace wcs
