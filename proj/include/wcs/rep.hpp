#pragma once

#include "wcs/rational.hpp"

namespace wcs {

// finite-dimensional quiver representation; vertices 0-based, arrow maps are dim[t] x dim[s]
struct Rep {
  struct Arrow {
    std::size_t s, t;
    RatMatrix map;
  };
  std::vector<std::size_t> dim;
  std::vector<Arrow> arrows;

  std::size_t total() const {
    std::size_t k = 0;
    for (auto d : dim) k += d;
    return k;
  }
  std::size_t offset(std::size_t v) const {
    std::size_t k = 0;
    for (std::size_t u = 0; u < v; ++u) k += dim[u];
    return k;
  }
};

// a morphism as one block-diagonal matrix on total spaces: (target total) x (source total)
using RepMap = RatMatrix;

inline std::vector<RepMap> hom_basis(const Rep& a, const Rep& b) {
  std::size_t nv = a.dim.size();
  std::vector<std::size_t> off(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) off[v + 1] = off[v] + b.dim[v] * a.dim[v];
  std::size_t unknowns = off[nv];
  auto var = [&](std::size_t v, std::size_t row, std::size_t col) {
    return off[v] + row * a.dim[v] + col;
  };
  RatMatrix eqs;
  for (std::size_t k = 0; k < a.arrows.size(); ++k) {
    const auto& aa = a.arrows[k];
    const auto& ba = b.arrows[k];
    std::size_t s = aa.s, t = aa.t;
    // (B_a f_s - f_t A_a)[p][q] = 0 for p < dimB_t, q < dimA_s
    for (std::size_t p = 0; p < b.dim[t]; ++p)
      for (std::size_t q = 0; q < a.dim[s]; ++q) {
        RatVec row = zeros(unknowns);
        for (std::size_t x = 0; x < b.dim[s]; ++x)
          if (sgn(ba.map[p][x])) row[var(s, x, q)] += ba.map[p][x];
        for (std::size_t y = 0; y < a.dim[t]; ++y)
          if (sgn(aa.map[y][q])) row[var(t, p, y)] -= aa.map[y][q];
        eqs.push_back(std::move(row));
      }
  }
  std::vector<RepMap> out;
  std::size_t ta = a.total(), tb = b.total();
  for (const auto& sol : kernel(eqs, unknowns)) {
    RepMap m(tb, zeros(ta));
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t row = 0; row < b.dim[v]; ++row)
        for (std::size_t col = 0; col < a.dim[v]; ++col)
          m[b.offset(v) + row][a.offset(v) + col] = sol[var(v, row, col)];
    out.push_back(std::move(m));
  }
  return out;
}

inline std::size_t hom_dimension(const Rep& a, const Rep& b) { return hom_basis(a, b).size(); }

// image of all morphisms from the given sources, as a subspace of b's total space
inline std::vector<RatVec> trace_subspace(const std::vector<Rep>& sources, const Rep& b) {
  std::vector<RatVec> cols;
  for (const auto& a : sources)
    for (const auto& f : hom_basis(a, b)) {
      RatMatrix ft = transpose(f, a.total());
      for (auto& c : ft)
        if (!is_zero(c)) cols.push_back(c);
    }
  if (cols.empty()) return {};
  return rref(cols, b.total()).rows;
}

// dimension vector of a graded subspace spanned by vectors homogeneous per vertex after reduction
inline std::vector<std::size_t> graded_dims(const Rep& b, const std::vector<RatVec>& sub) {
  std::vector<std::size_t> d(b.dim.size(), 0);
  for (std::size_t v = 0; v < b.dim.size(); ++v) {
    std::vector<RatVec> part;
    for (const auto& x : sub) {
      RatVec p(x.begin() + b.offset(v), x.begin() + b.offset(v) + b.dim[v]);
      if (!is_zero(p)) part.push_back(p);
    }
    d[v] = part.empty() ? 0 : rank(part);
  }
  return d;
}

}  // namespace wcs
