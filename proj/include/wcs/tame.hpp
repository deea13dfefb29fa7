#pragma once

#include <fstream>
#include <random>

#include "wcs/fan.hpp"
#include "wcs/nakayama.hpp"
#include "wcs/quiver.hpp"

namespace wcs {

struct MissingTubeTable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// quasi-simples in tau-order: tau X_j = X_{j-1}, indices 1-based and cyclic
struct Tube {
  std::vector<RatVec> quasi_simples;
  std::size_t rank() const { return quasi_simples.size(); }
  const RatVec& at(long j) const { return quasi_simples[wrap(j, rank()) - 1]; }
};

struct TubeData {
  std::vector<Tube> tubes;
  std::size_t count() const { return tubes.size(); }
  std::size_t total_rank() const {
    std::size_t s = 0;
    for (const auto& t : tubes) s += t.rank();
    return s;
  }
};

// X^i_{j,l}: tube index i (0-based), quasi-socle j (1-based), quasi-length l
struct TubeModule {
  std::size_t tube = 0;
  std::size_t socle = 1;
  std::size_t qlen = 1;
  auto operator<=>(const TubeModule&) const = default;
};

// one chosen quasi-socle per tube
struct ProjectiveVector {
  std::vector<std::size_t> choice;
  RatVec vec;
  bool operator==(const ProjectiveVector& o) const { return choice == o.choice; }
  auto operator<=>(const ProjectiveVector& o) const { return choice <=> o.choice; }
};

inline std::string support_string(const RatVec& d) {
  std::string s;
  bool thin = true;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (sgn(d[i]) != 0) s += std::to_string(i + 1);
    if (d[i] != 0 && d[i] != 1) thin = false;
  }
  return thin ? s : to_string(d);
}

// true when the underlying graph is one cycle through all vertices
inline bool is_cycle_type(const Quiver& q) {
  if (q.arrows.size() != q.n || q.n < 2) return false;
  std::vector<std::size_t> deg(q.n + 1, 0);
  for (const auto& [s, t] : q.arrows) {
    ++deg[s];
    ++deg[t];
  }
  for (std::size_t v = 1; v <= q.n; ++v)
    if (deg[v] != 2) return false;
  return is_connected(q);
}

// the vertices in cyclic order along the underlying cycle, starting at 1
inline std::vector<std::size_t> cycle_order(const Quiver& q) {
  std::vector<std::size_t> order{1};
  std::vector<bool> used(q.arrows.size(), false);
  while (order.size() < q.n) {
    std::size_t v = order.back(), next = 0;
    for (std::size_t a = 0; a < q.arrows.size() && !next; ++a) {
      if (used[a]) continue;
      auto [s, t] = q.arrows[a];
      if (s == v || t == v) {
        used[a] = true;
        next = s == v ? t : s;
      }
    }
    order.push_back(next);
  }
  return order;
}

namespace detail {

inline std::optional<std::vector<RatVec>> coxeter_orbit(const RatMatrix& phi, const RatVec& d,
                                                        std::size_t bound) {
  std::vector<RatVec> orbit{d};
  RatVec x = matvec(phi, d);
  while (x != d) {
    if (orbit.size() > bound) return std::nullopt;
    orbit.push_back(x);
    x = matvec(phi, x);
  }
  return orbit;
}

// X_1 is the lexicographically smallest member and X_{j-1} = Phi X_j
inline Tube tube_from_orbit(const RatMatrix& phi, std::vector<RatVec> orbit) {
  RatVec first = *std::min_element(orbit.begin(), orbit.end());
  std::size_t r = orbit.size();
  Tube t;
  t.quasi_simples.assign(r, first);
  RatVec x = first;
  for (std::size_t k = 1; k < r; ++k) {
    x = matvec(phi, x);
    t.quasi_simples[r - k] = x;
  }
  return t;
}

}  // namespace detail

inline void validate_tube_data(const HereditaryModel& m, const TubeData& td) {
  std::size_t n = m.n();
  RatMatrix phi = coxeter_matrix(m);
  std::size_t excess = 0;
  std::vector<RatVec> span{m.eta};
  for (std::size_t i = 0; i < td.count(); ++i) {
    const Tube& t = td.tubes[i];
    std::string where = "tube " + std::to_string(i + 1) + ": ";
    if (t.rank() < 2) throw InvariantViolation(where + "rank below 2");
    excess += t.rank() - 1;
    RatVec s = zeros(n);
    for (std::size_t j = 1; j <= t.rank(); ++j) {
      const RatVec& d = t.at(static_cast<long>(j));
      if (d.size() != n) throw InvariantViolation(where + "dimension vector of wrong length");
      if (!is_integral(d) || !is_nonnegative(d) || is_zero(d))
        throw InvariantViolation(where + "quasi-simple is not a dimension vector");
      if (sgn(dot(m.g_eta, d)) != 0) throw InvariantViolation(where + "quasi-simple is not regular");
      if (matvec(phi, d) != t.at(static_cast<long>(j) - 1))
        throw InvariantViolation(where + "ordering does not realize tau X_j = X_{j-1}");
      s = s + d;
      if (j < t.rank()) span.push_back(d);
    }
    if (s != m.eta) throw InvariantViolation(where + "quasi-simples do not sum to eta");
  }
  if (excess + 2 != n) throw InvariantViolation("sum of (rank - 1) over tubes is not n - 2");
  if (rank(span) != n - 1) throw InvariantViolation("quasi-simples and eta do not span g(eta)-perp");
}

// exceptional tubes of a cycle-type quiver: Coxeter orbits of thin regular arcs summing to eta
inline TubeData derive_cycle_tubes(const HereditaryModel& m) {
  const Quiver& q = m.quiver;
  std::size_t n = q.n;
  RatMatrix phi = coxeter_matrix(m);
  auto order = cycle_order(q);
  std::set<RatVec> seen;
  std::vector<Tube> tubes;
  for (std::size_t start = 0; start < n; ++start)
    for (std::size_t len = 1; len < n; ++len) {
      RatVec d = zeros(n);
      for (std::size_t k = 0; k < len; ++k) d[order[(start + k) % n] - 1] = 1;
      if (sgn(dot(m.g_eta, d)) != 0 || seen.count(d)) continue;
      auto orbit = detail::coxeter_orbit(phi, d, n);
      if (!orbit) continue;
      for (const auto& x : *orbit) seen.insert(x);
      RatVec s = zeros(n);
      for (const auto& x : *orbit) s = s + x;
      if (orbit->size() >= 2 && s == m.eta) tubes.push_back(detail::tube_from_orbit(phi, *orbit));
    }
  std::sort(tubes.begin(), tubes.end(), [](const Tube& a, const Tube& b) {
    return a.quasi_simples[0] < b.quasi_simples[0];
  });
  return {tubes};
}

// line-oriented table: "tube <rank>" followed by rank lines of n integers in tau-order
inline TubeData parse_tube_table(const std::string& text, std::size_t n) {
  std::stringstream in(text);
  std::string line;
  TubeData td;
  std::size_t pending = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ls(line);
    if (line.rfind("tube", 0) == 0) {
      if (pending) throw std::invalid_argument("tube table: too few rows in a tube");
      std::string word;
      ls >> word >> pending;
      if (!ls || pending < 1) throw std::invalid_argument("tube table: bad header '" + line + "'");
      td.tubes.emplace_back();
      continue;
    }
    if (!pending) throw std::invalid_argument("tube table: row outside a tube block");
    RatVec d;
    long x;
    while (ls >> x) d.push_back(x);
    if (!ls.eof() || d.size() != n) throw std::invalid_argument("tube table: bad row '" + line + "'");
    td.tubes.back().quasi_simples.push_back(d);
    --pending;
  }
  if (pending) throw std::invalid_argument("tube table: too few rows in a tube");
  return td;
}

inline TubeData load_tube_table(const std::string& path, std::size_t n) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read tube table " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_tube_table(ss.str(), n);
}

inline TubeData tube_data(const HereditaryModel& m, const std::optional<TubeData>& table = {}) {
  TubeData td;
  if (table)
    td = *table;
  else if (is_cycle_type(m.quiver))
    td = derive_cycle_tubes(m);
  else
    throw MissingTubeTable("tube data must be supplied for quivers that are not of cycle type");
  validate_tube_data(m, td);
  return td;
}

inline void check_module(const TubeData& td, const TubeModule& x) {
  if (x.tube >= td.count() || x.socle < 1 || x.socle > td.tubes[x.tube].rank() || x.qlen < 1)
    throw std::invalid_argument("malformed tube module");
}

inline bool is_tube_brick(const TubeData& td, const TubeModule& x) {
  return x.qlen <= td.tubes[x.tube].rank();
}

inline bool is_tube_rigid(const TubeData& td, const TubeModule& x) {
  return x.qlen < td.tubes[x.tube].rank();
}

inline RatVec tube_module_dim(const TubeData& td, const TubeModule& x) {
  check_module(td, x);
  const Tube& t = td.tubes[x.tube];
  RatVec d = zeros(t.quasi_simples[0].size());
  for (std::size_t k = 0; k < x.qlen; ++k) d = d + t.at(static_cast<long>(x.socle + k));
  return d;
}

inline std::string module_name(const TubeData& td, const TubeModule& x) {
  return support_string(tube_module_dim(td, x));
}

inline TubeModule tube_tau(const TubeData& td, const TubeModule& x) {
  check_module(td, x);
  return {x.tube, wrap(static_cast<long>(x.socle) - 1, td.tubes[x.tube].rank()), x.qlen};
}

inline std::vector<TubeModule> tube_bricks(const TubeData& td) {
  std::vector<TubeModule> out;
  for (std::size_t i = 0; i < td.count(); ++i)
    for (std::size_t j = 1; j <= td.tubes[i].rank(); ++j)
      for (std::size_t l = 1; l <= td.tubes[i].rank(); ++l) out.push_back({i, j, l});
  return out;
}

inline std::vector<TubeModule> tube_rigid_bricks(const TubeData& td) {
  std::vector<TubeModule> out;
  for (const auto& x : tube_bricks(td))
    if (is_tube_rigid(td, x)) out.push_back(x);
  return out;
}

inline Subspace g_eta_perp(const HereditaryModel& m) { return Subspace(m.n(), {m.g_eta}); }

inline Cone regular_domain(const HereditaryModel& m, const TubeData& td, const TubeModule& x) {
  check_module(td, x);
  if (!is_tube_brick(td, x)) throw std::invalid_argument("regular domain of a non-brick");
  std::vector<RatVec> eqs{m.g_eta, tube_module_dim(td, x)}, ineqs;
  for (std::size_t l = 1; l < x.qlen; ++l)
    ineqs.push_back(tube_module_dim(td, {x.tube, x.socle, l}));
  return Cone::from_hrep(m.n(), eqs, ineqs);
}

inline Cone d_reg_eta(const HereditaryModel& m) {
  return Cone::from_hrep(m.n(), {m.eta, m.g_eta}, {});
}

inline ProjectiveVector projective_vector(const HereditaryModel& m, const TubeData& td,
                                          const std::vector<std::size_t>& choice) {
  if (choice.size() != td.count()) throw std::invalid_argument("one quasi-socle per tube required");
  RatMatrix a{m.g_eta, m.eta};
  RatVec b{rat(0), rat(1)};
  for (std::size_t i = 0; i < td.count(); ++i) {
    if (choice[i] < 1 || choice[i] > td.tubes[i].rank())
      throw std::invalid_argument("quasi-socle out of range");
    for (std::size_t j = 1; j <= td.tubes[i].rank(); ++j)
      if (j != choice[i]) {
        a.push_back(td.tubes[i].at(static_cast<long>(j)));
        b.push_back(0);
      }
  }
  auto v = solve_unique(a, b, m.n());
  if (!v) throw InvariantViolation("projective vector system is singular");
  return {choice, *v};
}

inline std::vector<ProjectiveVector> all_projective_vectors(const HereditaryModel& m,
                                                            const TubeData& td) {
  std::vector<ProjectiveVector> out;
  std::vector<std::size_t> c(td.count(), 1);
  while (true) {
    out.push_back(projective_vector(m, td, c));
    std::size_t i = td.count();
    while (i > 0 && c[i - 1] == td.tubes[i - 1].rank()) c[--i] = 1;
    if (i == 0) break;
    ++c[i - 1];
  }
  return out;
}

inline std::string projective_name(const TubeData& td, const ProjectiveVector& p) {
  std::string s = "p(";
  for (std::size_t i = 0; i < p.choice.size(); ++i)
    s += (i ? "," : "") + module_name(td, {i, p.choice[i], 1});
  return s + ")";
}

inline RatVec project_off(const RatVec& x, const RatVec& a) {
  return x - (dot(x, a) / dot(a, a)) * a;
}

inline RatVec g0_of_dim(const HereditaryModel& m, const RatVec& d) {
  return project_off(g_from_dim(m, d), m.g_eta);
}

inline RatVec g0(const HereditaryModel& m, const TubeData& td, const TubeModule& x) {
  return g0_of_dim(m, tube_module_dim(td, x));
}

inline bool vperp_membership(const HereditaryModel& m, const TubeData& td, const RatVec& w,
                             const TubeModule& x) {
  if (sgn(dot(m.g_eta, w)) != 0) throw std::invalid_argument("w is not in g(eta)-perp");
  if (!is_tube_brick(td, x)) throw std::invalid_argument("v-perp membership of a non-brick");
  if (sgn(dot(w, tube_module_dim(td, x))) != 0) return false;
  Rational s = 0;
  for (std::size_t l = 1; l < x.qlen; ++l) {
    s += dot(w, td.tubes[x.tube].at(static_cast<long>(x.socle + l - 1)));
    if (s > 0) return false;
  }
  return true;
}

// exists eps > 0 with v + eps w in D(Y), decided by lexicographic comparison
inline bool infinitesimal_membership(const Nakayama& a, const RatVec& w, const NakModule& y,
                                     const RatVec& v) {
  if (!a.is_brick(y)) throw std::invalid_argument("infinitesimal membership of a non-brick");
  if (!a.domain(y).contains(v)) throw std::invalid_argument("v is not in D(Y)");
  if (sgn(dot(w, a.dim(y))) != 0) return false;
  for (std::size_t l = 1; l < y.length; ++l) {
    RatVec d = a.dim({y.socle, l});
    int sv = sgn(dot(v, d)), sw = sgn(dot(w, d));
    if (sv > 0 || (sv == 0 && sw > 0)) return false;
  }
  return true;
}

// dimension vectors of all nonzero submodules of Y, as images of morphisms from indecomposables
inline std::vector<RatVec> submodule_dims_by_images(const Nakayama& a, const NakModule& y) {
  Rep ry = a.rep(y);
  std::set<RatVec> out;
  for (const auto& z : a.indecomposables()) {
    Rep rz = a.rep(z);
    for (const auto& f : hom_basis(rz, ry)) {
      std::vector<RatVec> cols;
      for (auto& c : transpose(f, rz.total()))
        if (!is_zero(c)) cols.push_back(c);
      if (cols.empty()) continue;
      auto dims = graded_dims(ry, rref(cols, ry.total()).rows);
      RatVec d = zeros(a.rank());
      for (std::size_t v = 0; v < dims.size(); ++v) d[v] = static_cast<long>(dims[v]);
      out.insert(d);
    }
  }
  return {out.begin(), out.end()};
}

// D_{v-perp}(X) for a module with dimension vector dim_x and submodule dimension vectors subs
inline bool vperp_domain_membership(const std::vector<RatVec>& subs, const RatVec& dim_x,
                                    const RatVec& w, const RatVec& v) {
  if (sgn(dot(v, w)) != 0) throw std::invalid_argument("w is not in v-perp");
  if (sgn(dot(w, dim_x)) != 0) return false;
  for (const auto& d : subs)
    if (sgn(dot(v, d)) == 0 && sgn(dot(w, d)) > 0) return false;
  return true;
}

inline bool vperp_domain_membership(const Nakayama& a, const RatVec& w, const NakModule& y,
                                    const RatVec& v) {
  return vperp_domain_membership(submodule_dims_by_images(a, y), a.dim(y), w, v);
}

struct ThmAReport {
  bool ok = true;
  std::size_t bricks = 0;
  std::size_t samples = 0;
  std::size_t members = 0;
  std::vector<std::string> disagreements;
};

namespace detail {

inline Rational sample_rational(std::mt19937_64& g, long lo, long hi, long den = 3) {
  std::uniform_int_distribution<long> num(lo * den, hi * den), d(1, den);
  Rational r(num(g), d(g));
  r.canonicalize();
  return r;
}

}  // namespace detail

// v is drawn from D(Y) (sometimes on a face), w from v-perp, often inside further hyperplanes
inline ThmAReport verify_thm_a(std::size_t r_min, std::size_t r_max, std::size_t per_brick,
                               std::uint64_t seed) {
  ThmAReport rep;
  std::mt19937_64 g(seed);
  for (std::size_t r = r_min; r <= r_max; ++r) {
    Nakayama a(r);
    for (const auto& y : a.indecomposables()) {
      if (!a.is_brick(y)) continue;
      ++rep.bricks;
      auto subs = submodule_dims_by_images(a, y);
      Cone dom = a.domain(y);
      for (std::size_t s = 0; s < per_brick; ++s) {
        RatVec v = zeros(r);
        while (is_zero(v)) {
          for (const auto& x : dom.rays())
            if (g() % 3) v = v + detail::sample_rational(g, 0, 3) * x;
          for (const auto& x : dom.lineality()) v = v + detail::sample_rational(g, -3, 3) * x;
        }
        RatVec w(r);
        for (auto& x : w) x = detail::sample_rational(g, -3, 3);
        std::vector<RatVec> off{v};
        if (g() % 4) off.push_back(a.dim(y));
        for (const auto& d : subs)
          if (sgn(dot(v, d)) == 0 && g() % 3 == 0) off.push_back(d);
        w = project_off_span(w, off);
        bool lex = infinitesimal_membership(a, w, y, v);
        bool perp = vperp_domain_membership(subs, a.dim(y), w, v);
        ++rep.samples;
        rep.members += lex;
        if (lex != perp) {
          rep.ok = false;
          rep.disagreements.push_back(to_string(y) + " v=" + to_string(v) + " w=" + to_string(w));
        }
      }
    }
  }
  return rep;
}

}  // namespace wcs
