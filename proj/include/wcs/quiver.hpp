#pragma once

#include <cstdlib>
#include <queue>
#include <sstream>

#include "wcs/rational.hpp"

namespace wcs {

struct NotEuclidean : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuiverParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using IntMatrix = std::vector<std::vector<long>>;

// vertices 1..n, arrows as (source, target)
struct Quiver {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;

  std::size_t arrow_count(std::size_t i, std::size_t j) const {
    std::size_t c = 0;
    for (const auto& a : arrows)
      if (a.first == i && a.second == j) ++c;
    return c;
  }

  std::string text() const {
    auto sorted = arrows;
    std::sort(sorted.begin(), sorted.end());
    std::string s = std::to_string(n) + ";";
    for (std::size_t k = 0; k < sorted.size(); ++k)
      s += (k ? ", " : " ") + std::to_string(sorted[k].first) + ">" +
           std::to_string(sorted[k].second);
    return s;
  }
};

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::size_t parse_index(const std::string& s) {
  std::string t = trim(s);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw QuiverParseError("bad vertex index '" + s + "'");
  return std::stoul(t);
}

inline bool is_connected(const Quiver& q) {
  if (q.n == 0) return false;
  std::vector<bool> seen(q.n + 1, false);
  std::queue<std::size_t> bfs;
  bfs.push(1);
  seen[1] = true;
  while (!bfs.empty()) {
    std::size_t v = bfs.front();
    bfs.pop();
    for (const auto& [s, t] : q.arrows) {
      std::size_t w = s == v ? t : (t == v ? s : 0);
      if (w && !seen[w]) {
        seen[w] = true;
        bfs.push(w);
      }
    }
  }
  for (std::size_t v = 1; v <= q.n; ++v)
    if (!seen[v]) return false;
  return true;
}

// "n; i>j, i>j, ..." with arbitrary whitespace and arrow order
inline Quiver parse_quiver(const std::string& text) {
  std::size_t semi = text.find(';');
  Quiver q;
  q.n = parse_index(semi == std::string::npos ? text : text.substr(0, semi));
  if (q.n == 0) throw QuiverParseError("quiver needs at least one vertex");
  if (semi != std::string::npos) {
    std::stringstream rest(text.substr(semi + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      std::size_t gt = item.find('>');
      if (gt == std::string::npos) throw QuiverParseError("arrow without '>': " + item);
      std::size_t s = parse_index(item.substr(0, gt)), t = parse_index(item.substr(gt + 1));
      if (s < 1 || s > q.n || t < 1 || t > q.n) throw QuiverParseError("vertex out of range");
      if (s == t) throw QuiverParseError("loops are not allowed");
      q.arrows.emplace_back(s, t);
    }
  }
  std::sort(q.arrows.begin(), q.arrows.end());
  if (!is_connected(q)) throw QuiverParseError("quiver is not connected");
  return q;
}

inline bool is_acyclic(const Quiver& q) {
  std::vector<std::size_t> indeg(q.n + 1, 0);
  for (const auto& a : q.arrows) ++indeg[a.second];
  std::vector<std::size_t> stack;
  for (std::size_t v = 1; v <= q.n; ++v)
    if (!indeg[v]) stack.push_back(v);
  std::size_t seen = 0;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    ++seen;
    for (const auto& a : q.arrows)
      if (a.first == v && --indeg[a.second] == 0) stack.push_back(a.second);
  }
  return seen == q.n;
}

// B_ij = #(i -> j) - #(j -> i), 0-based storage
inline IntMatrix exchange_matrix(const Quiver& q) {
  IntMatrix b(q.n, std::vector<long>(q.n, 0));
  for (const auto& [s, t] : q.arrows) {
    b[s - 1][t - 1] += 1;
    b[t - 1][s - 1] -= 1;
  }
  return b;
}

inline Quiver quiver_from_matrix(const IntMatrix& b) {
  Quiver q;
  q.n = b.size();
  for (std::size_t i = 0; i < q.n; ++i)
    for (std::size_t j = 0; j < q.n; ++j)
      for (long c = 0; c < b[i][j]; ++c) q.arrows.emplace_back(i + 1, j + 1);
  std::sort(q.arrows.begin(), q.arrows.end());
  return q;
}

inline bool is_skew_symmetric(const IntMatrix& b) {
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[i][j] != -b[j][i]) return false;
  return true;
}

// Fomin-Zelevinsky mutation at the 1-based vertex k
inline IntMatrix fz_mutate(const IntMatrix& b, std::size_t k) {
  std::size_t n = b.size();
  if (k < 1 || k > n) throw std::out_of_range("mutation vertex out of range");
  std::size_t c = k - 1;
  IntMatrix m = b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == c || j == c)
        m[i][j] = -b[i][j];
      else
        m[i][j] = b[i][j] + (std::labs(b[i][c]) * b[c][j] + b[i][c] * std::labs(b[c][j])) / 2;
    }
  return m;
}

struct TransportMatrices {
  RatMatrix plus;
  RatMatrix minus;
};

inline TransportMatrices a_matrices(const IntMatrix& b, std::size_t k) {
  std::size_t n = b.size();
  if (k < 1 || k > n) throw std::out_of_range("mutation vertex out of range");
  std::size_t c = k - 1;
  TransportMatrices t{identity(n), identity(n)};
  t.plus[c][c] = -1;
  t.minus[c][c] = -1;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == c) continue;
    t.plus[c][j] = std::max(b[c][j], 0L);
    t.minus[c][j] = std::max(-b[c][j], 0L);
  }
  return t;
}

struct HereditaryModel {
  Quiver quiver;
  RatMatrix euler;
  std::vector<RatVec> proj_dims;
  RatVec eta;
  RatVec g_eta;

  std::size_t n() const { return quiver.n; }
};

inline RatMatrix euler_matrix(const Quiver& q) {
  RatMatrix e = identity(q.n);
  for (const auto& [s, t] : q.arrows) e[s - 1][t - 1] -= 1;
  return e;
}

inline Rational euler_form(const HereditaryModel& m, const RatVec& d, const RatVec& e) {
  return dot(d, matvec(m.euler, e));
}

// g with sum_i g_i dim P(i) = d, which is E^T d for the Euler matrix convention above
inline RatVec g_from_dim(const HereditaryModel& m, const RatVec& d) {
  return vecmat(d, m.euler);
}

inline RatVec primitive_positive_null_root(const RatMatrix& sym) {
  auto ker = kernel(sym, sym.size());
  if (ker.size() != 1) throw NotEuclidean("radical of the symmetrized Euler form has rank " +
                                          std::to_string(ker.size()));
  RatVec v = primitive(ker[0]);
  bool neg = std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) < 0; });
  if (neg) v = -v;
  for (const auto& x : v)
    if (sgn(x) <= 0) throw NotEuclidean("radical has no positive generator");
  return v;
}

inline HereditaryModel build_model(const Quiver& q) {
  if (!is_acyclic(q)) throw NotEuclidean("quiver has an oriented cycle");
  HereditaryModel m;
  m.quiver = q;
  m.euler = euler_matrix(q);
  RatMatrix sym = m.euler;
  for (std::size_t i = 0; i < q.n; ++i)
    for (std::size_t j = 0; j < q.n; ++j) sym[i][j] += m.euler[j][i];
  m.eta = primitive_positive_null_root(sym);
  auto inv = inverse(transpose(m.euler));
  if (!inv) throw InvariantViolation("Euler matrix is singular");
  RatMatrix cols = transpose(*inv);
  for (std::size_t i = 0; i < q.n; ++i) m.proj_dims.push_back(cols[i]);
  m.g_eta = g_from_dim(m, m.eta);
  if (sgn(dot(m.g_eta, m.eta)) != 0) throw InvariantViolation("g(eta).eta != 0");
  return m;
}

enum class DimClass { Preprojective, Regular, Preinjective };

inline const char* to_string(DimClass c) {
  switch (c) {
    case DimClass::Preprojective: return "preprojective";
    case DimClass::Regular: return "regular";
    default: return "preinjective";
  }
}

inline DimClass classify_dim(const HereditaryModel& m, const RatVec& d) {
  if (is_zero(d)) throw std::invalid_argument("classify_dim of the zero vector");
  int s = sgn(dot(m.g_eta, d));
  return s < 0 ? DimClass::Preprojective : (s == 0 ? DimClass::Regular : DimClass::Preinjective);
}

// Coxeter transformation on dimension vectors: dim tau X = coxeter * dim X for non-projective
// indecomposable X
inline RatMatrix coxeter_matrix(const HereditaryModel& m) {
  auto inv = inverse(m.euler);
  if (!inv) throw InvariantViolation("Euler matrix is singular");
  RatMatrix c = matmul(*inv, transpose(m.euler));
  for (auto& row : c)
    for (auto& x : row) x = -x;
  return c;
}

}  // namespace wcs
