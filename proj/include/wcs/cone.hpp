#pragma once

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <set>

#include "wcs/rational.hpp"

namespace wcs {

struct Constraint {
  RatVec a;
  bool equality = false;
};

struct DDResult {
  std::vector<RatVec> lineality;
  std::vector<RatVec> rays;
};

// double description for {x : a.x <= 0 (or = 0) for all constraints}
inline DDResult double_description(std::size_t n, const std::vector<Constraint>& cs) {
  std::vector<RatVec> lin;
  for (std::size_t i = 0; i < n; ++i) lin.push_back(unit(n, i));
  std::vector<RatVec> rays;
  std::vector<boost::dynamic_bitset<>> zs;
  std::size_t m = cs.size();
  for (std::size_t c = 0; c < m; ++c) {
    const RatVec& a = cs[c].a;
    if (a.size() != n) throw DimensionMismatch("constraint length");
    if (is_zero(a)) {
      for (auto& z : zs) z.set(c);
      continue;
    }
    std::size_t piv = lin.size();
    Rational apiv;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      apiv = dot(a, lin[i]);
      if (sgn(apiv) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < lin.size()) {
      RatVec l0 = lin[piv];
      std::vector<RatVec> nl;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == piv) continue;
        Rational f = dot(a, lin[i]) / apiv;
        nl.push_back(sgn(f) ? primitive(lin[i] - f * l0) : lin[i]);
      }
      lin = std::move(nl);
      for (std::size_t i = 0; i < rays.size(); ++i) {
        Rational f = dot(a, rays[i]) / apiv;
        if (sgn(f)) rays[i] = primitive(rays[i] - f * l0);
        zs[i].set(c);
      }
      if (!cs[c].equality) {
        boost::dynamic_bitset<> z(m);
        for (std::size_t i = 0; i < c; ++i) z.set(i);
        rays.push_back(primitive(sgn(apiv) > 0 ? -l0 : l0));
        zs.push_back(std::move(z));
      }
      continue;
    }
    std::vector<int> s(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) s[i] = sgn(dot(a, rays[i]));
    std::vector<RatVec> nr;
    std::vector<boost::dynamic_bitset<>> nz;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (s[i] < 0 && !cs[c].equality) {
        nr.push_back(rays[i]);
        nz.push_back(zs[i]);
      } else if (s[i] == 0) {
        nr.push_back(rays[i]);
        boost::dynamic_bitset<> z = zs[i];
        z.set(c);
        nz.push_back(std::move(z));
      }
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (s[p] <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (s[q] >= 0) continue;
        boost::dynamic_bitset<> common = zs[p] & zs[q];
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == p || t == q) continue;
          if (common.is_subset_of(zs[t])) adjacent = false;
        }
        if (!adjacent) continue;
        RatVec r = primitive(dot(a, rays[p]) * rays[q] - dot(a, rays[q]) * rays[p]);
        boost::dynamic_bitset<> z = common;
        z.set(c);
        nr.push_back(std::move(r));
        nz.push_back(std::move(z));
      }
    }
    rays = std::move(nr);
    zs = std::move(nz);
  }
  return {lin, rays};
}

// rational polyhedral cone {x : e.x = 0, h.x <= 0} with both representations in canonical form
class Cone {
 public:
  Cone() = default;

  static Cone zero(std::size_t n) { return from_generators(n, {}); }

  static Cone whole(std::size_t n) { return from_hrep(n, {}, {}); }

  static Cone from_generators(std::size_t n, const std::vector<RatVec>& gens) {
    for (const auto& g : gens)
      if (g.size() != n) throw DimensionMismatch("generator length");
    std::vector<Constraint> polar;
    for (const auto& g : gens)
      if (!is_zero(g)) polar.push_back({g, false});
    DDResult p = double_description(n, polar);
    return from_hrep_exact(n, p.lineality, p.rays);
  }

  static Cone from_hrep(std::size_t n, const std::vector<RatVec>& eqs,
                        const std::vector<RatVec>& ineqs) {
    std::vector<Constraint> cs;
    for (const auto& e : eqs) cs.push_back({e, true});
    for (const auto& h : ineqs) cs.push_back({h, false});
    DDResult d = double_description(n, cs);
    std::vector<RatVec> gens = d.rays;
    for (const auto& l : d.lineality) {
      gens.push_back(l);
      gens.push_back(-l);
    }
    return from_generators(n, gens);
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return dim_; }
  const std::vector<RatVec>& equations() const { return eqs_; }
  const std::vector<RatVec>& inequalities() const { return ineqs_; }
  const std::vector<RatVec>& rays() const { return rays_; }
  const std::vector<RatVec>& lineality() const { return lin_; }
  bool strictly_convex() const { return lin_.empty(); }
  bool is_zero_cone() const { return dim_ == 0; }

  std::vector<RatVec> generators() const {
    std::vector<RatVec> g = rays_;
    for (const auto& l : lin_) {
      g.push_back(l);
      g.push_back(-l);
    }
    return g;
  }

  bool contains(const RatVec& x) const {
    if (x.size() != n_) throw DimensionMismatch("point length");
    for (const auto& e : eqs_)
      if (sgn(dot(e, x)) != 0) return false;
    for (const auto& h : ineqs_)
      if (sgn(dot(h, x)) > 0) return false;
    return true;
  }

  bool in_relative_interior(const RatVec& x) const {
    if (!contains(x)) return false;
    for (const auto& h : ineqs_)
      if (sgn(dot(h, x)) == 0) return false;
    return true;
  }

  bool contains(const Cone& other) const {
    for (const auto& g : other.rays_)
      if (!contains(g)) return false;
    for (const auto& l : other.lin_)
      if (!contains(l) || !contains(RatVec(-l))) return false;
    return true;
  }

  RatVec interior_point() const {
    RatVec p = zeros(n_);
    for (const auto& r : rays_) p = p + r;
    return p;
  }

  // -1, 0, +1 when the cone lies in {a.x<=0}, {a.x=0}, {a.x>=0}; 2 when it meets both open sides
  int side(const RatVec& a) const {
    bool neg = false, pos = false;
    for (const auto& l : lin_)
      if (sgn(dot(a, l)) != 0) return 2;
    for (const auto& r : rays_) {
      int s = sgn(dot(a, r));
      if (s < 0) neg = true;
      if (s > 0) pos = true;
    }
    if (neg && pos) return 2;
    return neg ? -1 : (pos ? 1 : 0);
  }

  Cone with_equation(const RatVec& a) const {
    std::vector<RatVec> e = eqs_;
    e.push_back(a);
    return from_hrep(n_, e, ineqs_);
  }

  Cone with_inequality(const RatVec& a) const {
    std::vector<RatVec> h = ineqs_;
    h.push_back(a);
    return from_hrep(n_, eqs_, h);
  }

  Cone map(const RatMatrix& m) const {
    std::size_t out = m.size();
    std::vector<RatVec> g;
    for (const auto& x : generators()) g.push_back(matvec(m, x));
    return from_generators(out, g);
  }

  bool operator==(const Cone& o) const {
    return n_ == o.n_ && eqs_ == o.eqs_ && ineqs_ == o.ineqs_;
  }
  bool operator!=(const Cone& o) const { return !(*this == o); }
  bool operator<(const Cone& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    if (eqs_ != o.eqs_) return eqs_ < o.eqs_;
    return ineqs_ < o.ineqs_;
  }

  std::string key() const {
    std::string s = std::to_string(n_) + "|";
    for (const auto& e : eqs_) s += to_string(e);
    s += "|";
    for (const auto& h : ineqs_) s += to_string(h);
    return s;
  }

 private:
  // polar lineality gives the equations, polar rays the facet normals
  static Cone from_hrep_exact(std::size_t n, const std::vector<RatVec>& eqs,
                              const std::vector<RatVec>& facets) {
    Cone c;
    c.n_ = n;
    c.eqs_ = canonical_basis(eqs, n);
    c.dim_ = n - c.eqs_.size();
    std::vector<RatVec> span = kernel(c.eqs_, n);
    std::set<RatVec> fs;
    for (const auto& h : facets) {
      RatVec p = project_onto_span(h, span);
      if (!is_zero(p)) fs.insert(primitive(p));
    }
    c.ineqs_.assign(fs.begin(), fs.end());
    std::vector<Constraint> cs;
    for (const auto& e : c.eqs_) cs.push_back({e, true});
    for (const auto& h : c.ineqs_) cs.push_back({h, false});
    DDResult d = double_description(n, cs);
    c.lin_ = canonical_basis(d.lineality, n);
    std::set<RatVec> rs;
    for (const auto& r : d.rays) {
      RatVec p = project_off_span(r, c.lin_);
      if (!is_zero(p)) rs.insert(primitive(p));
    }
    c.rays_.assign(rs.begin(), rs.end());
    return c;
  }

  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<RatVec> eqs_;
  std::vector<RatVec> ineqs_;
  std::vector<RatVec> rays_;
  std::vector<RatVec> lin_;
};

inline Cone cone_hull(std::size_t n, const std::vector<RatVec>& gens) {
  return Cone::from_generators(n, gens);
}

inline Cone cone_hull(const std::vector<RatVec>& gens) {
  if (gens.empty()) throw DimensionMismatch("cone_hull of empty set needs an ambient dimension");
  return Cone::from_generators(gens[0].size(), gens);
}

inline Cone cone_intersect(const Cone& c, const Cone& d) {
  if (c.ambient_dim() != d.ambient_dim()) throw DimensionMismatch("cone_intersect");
  std::vector<RatVec> e = c.equations(), h = c.inequalities();
  e.insert(e.end(), d.equations().begin(), d.equations().end());
  h.insert(h.end(), d.inequalities().begin(), d.inequalities().end());
  return Cone::from_hrep(c.ambient_dim(), e, h);
}

inline std::size_t cone_dim(const Cone& c) { return c.dim(); }

// the smallest face of c containing f
inline Cone minimal_face(const Cone& f, const Cone& c) {
  std::vector<RatVec> e = c.equations();
  std::vector<RatVec> gens = f.generators();
  RatVec p = f.interior_point();
  for (const auto& h : c.inequalities()) {
    bool tight = true;
    for (const auto& g : gens)
      if (sgn(dot(h, g)) != 0) {
        tight = false;
        break;
      }
    if (tight && sgn(dot(h, p)) == 0) e.push_back(h);
  }
  return Cone::from_hrep(c.ambient_dim(), e, c.inequalities());
}

inline bool is_face(const Cone& f, const Cone& c) {
  if (f.ambient_dim() != c.ambient_dim()) throw DimensionMismatch("is_face");
  if (!c.contains(f)) return false;
  return minimal_face(f, c) == f;
}

inline std::vector<Cone> faces(const Cone& c) {
  std::set<Cone> seen{c};
  std::vector<Cone> todo{c}, out;
  while (!todo.empty()) {
    Cone f = todo.back();
    todo.pop_back();
    out.push_back(f);
    for (const auto& h : f.inequalities()) {
      Cone g = f.with_equation(h);
      if (g.dim() + 1 == f.dim() && seen.insert(g).second) todo.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// x expressible as a nonnegative combination of gens, decided by exact Fourier-Motzkin on the
// multipliers
inline bool in_nonnegative_span(const RatVec& x, const std::vector<RatVec>& gens) {
  std::size_t n = x.size(), k = gens.size();
  if (k == 0) return is_zero(x);
  // lambda >= 0 with G lambda = x, tested as the cone {(lambda,t) : G lambda - t x = 0, lambda>=0,
  // t>=0} containing a ray with t > 0
  std::vector<RatVec> eqs;
  for (std::size_t i = 0; i < n; ++i) {
    RatVec row = zeros(k + 1);
    for (std::size_t j = 0; j < k; ++j) row[j] = gens[j][i];
    row[k] = -x[i];
    eqs.push_back(row);
  }
  std::vector<Constraint> cs;
  for (auto& e : eqs) cs.push_back({e, true});
  for (std::size_t j = 0; j <= k; ++j) cs.push_back({-unit(k + 1, j), false});
  DDResult d = double_description(k + 1, cs);
  for (const auto& r : d.rays)
    if (sgn(r[k]) > 0) return true;
  for (const auto& l : d.lineality)
    if (sgn(l[k]) != 0) return true;
  return is_zero(x);
}

}  // namespace wcs
