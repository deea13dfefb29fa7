#pragma once

#include <set>

#include "wcs/coamalg.hpp"
#include "wcs/parallel.hpp"

namespace wcs {

// (M, P+, P-): rigid regular bricks and two sets of projective vectors
struct SrrTriple {
  std::vector<TubeModule> modules;
  std::vector<ProjectiveVector> plus;
  std::vector<ProjectiveVector> minus;

  void normalize() {
    std::sort(modules.begin(), modules.end());
    modules.erase(std::unique(modules.begin(), modules.end()), modules.end());
    for (auto* s : {&plus, &minus}) {
      std::sort(s->begin(), s->end());
      s->erase(std::unique(s->begin(), s->end()), s->end());
    }
  }
  bool projective_free() const { return plus.empty() && minus.empty(); }
  std::size_t projective_count() const { return plus.size() + minus.size(); }
  bool operator==(const SrrTriple& o) const {
    return modules == o.modules && plus == o.plus && minus == o.minus;
  }
  auto operator<=>(const SrrTriple& o) const {
    if (auto c = modules <=> o.modules; c != 0) return c;
    if (auto c = plus <=> o.plus; c != 0) return c;
    return minus <=> o.minus;
  }
};

struct SrrCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

struct SrrCone {
  SrrTriple triple;
  Cone cone;
};

// quasi-simple X^i_{j,1} as (i, j)
using QuasiSimple = std::pair<std::size_t, std::size_t>;

inline bool contains_triple(const SrrTriple& big, const SrrTriple& small) {
  auto sub = [](const auto& a, const auto& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
  return sub(small.modules, big.modules) && sub(small.plus, big.plus) && sub(small.minus, big.minus);
}

inline std::string to_string(const TubeData& td, const SrrTriple& t) {
  auto pv = [&](const std::vector<ProjectiveVector>& ps) {
    std::string s;
    for (const auto& p : ps) s += (s.empty() ? "" : " ") + projective_name(td, p);
    return s;
  };
  std::string s = "(";
  for (std::size_t k = 0; k < t.modules.size(); ++k)
    s += (k ? " " : "") + module_name(td, t.modules[k]);
  return s + " | " + pv(t.plus) + " | " + pv(t.minus) + ")";
}

inline std::set<QuasiSimple> tp(const std::vector<ProjectiveVector>& ps) {
  std::set<QuasiSimple> out;
  for (const auto& p : ps)
    for (std::size_t i = 0; i < p.choice.size(); ++i) out.insert({i, p.choice[i]});
  return out;
}

inline std::vector<ProjectiveVector> pc(const HereditaryModel& m, const TubeData& td,
                                        const std::set<QuasiSimple>& y) {
  std::vector<std::vector<std::size_t>> per(td.count());
  for (const auto& [i, j] : y) {
    if (i >= td.count() || j < 1 || j > td.tubes[i].rank()) throw std::invalid_argument("bad quasi-simple");
    per[i].push_back(j);
  }
  std::vector<ProjectiveVector> out;
  for (const auto& p : per)
    if (p.empty()) return out;
  std::vector<std::size_t> idx(td.count(), 0);
  while (true) {
    std::vector<std::size_t> c(td.count());
    for (std::size_t i = 0; i < td.count(); ++i) c[i] = per[i][idx[i]];
    out.push_back(projective_vector(m, td, c));
    std::size_t i = 0;
    while (i < td.count() && ++idx[i] == per[i].size()) idx[i++] = 0;
    if (i == td.count()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline SrrCheck is_srr(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  for (const auto& x : t.modules) check_module(td, x);
  for (const auto* s : {&t.plus, &t.minus})
    for (const auto& p : *s) {
      if (p.choice.size() != td.count()) throw std::invalid_argument("projective vector of the wrong shape");
      for (std::size_t i = 0; i < td.count(); ++i)
        if (p.choice[i] < 1 || p.choice[i] > td.tubes[i].rank())
          throw std::invalid_argument("projective vector choice out of range");
    }
  if (!t.plus.empty() && !t.minus.empty()) return {false, "both P+ and P- are nonempty"};
  for (std::size_t a = 0; a < t.modules.size(); ++a) {
    const auto& x = t.modules[a];
    if (!is_tube_rigid(td, x)) return {false, module_name(td, x) + " is not a rigid brick"};
    Nakayama lam(td.tubes[x.tube].rank());
    for (const auto& y : t.modules) {
      if (y.tube != x.tube) continue;
      auto ty = lam.tau({y.socle, y.qlen});
      if (ty && lam.hom_dim({x.socle, x.qlen}, *ty) != 0)
        return {false, "Hom(" + module_name(td, x) + ", tau " + module_name(td, y) + ") != 0"};
    }
    for (const auto& p : t.plus)
      if (sgn(dot(p.vec, tube_module_dim(td, tube_tau(td, x)))) != 0)
        return {false, projective_name(td, p) + " meets tau " + module_name(td, x)};
    for (const auto& p : t.minus)
      if (sgn(dot(p.vec, tube_module_dim(td, x))) != 0)
        return {false, projective_name(td, p) + " meets " + module_name(td, x)};
  }
  return {};
}

inline void require_srr(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  auto c = is_srr(m, td, t);
  if (!c) throw std::invalid_argument("not support regular rigid: " + c.reason);
}

inline bool is_projectively_closed(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  SrrTriple s = t;
  s.normalize();
  return s.plus == pc(m, td, tp(s.plus)) && s.minus == pc(m, td, tp(s.minus));
}

inline SrrTriple projective_closure(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  require_srr(m, td, t);
  SrrTriple s = t;
  s.plus = pc(m, td, tp(t.plus));
  s.minus = pc(m, td, tp(t.minus));
  s.normalize();
  return s;
}

inline SttObject rho(const HereditaryModel& m, const TubeData& td, const SrrTriple& t, std::size_t i) {
  require_srr(m, td, t);
  if (i >= td.count()) throw std::invalid_argument("tube index out of range");
  std::size_t r = td.tubes[i].rank();
  SttObject o;
  for (const auto& x : t.modules)
    if (x.tube == i) o.modules.push_back({x.socle, x.qlen});
  for (const auto& [k, j] : tp(t.plus))
    if (k == i) o.modules.push_back({j, r + 1});
  for (const auto& [k, j] : tp(t.minus))
    if (k == i) o.shifted.push_back(j);
  o.normalize();
  return o;
}

inline std::vector<SttObject> rho_all(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  std::vector<SttObject> out;
  for (std::size_t i = 0; i < td.count(); ++i) out.push_back(rho(m, td, t, i));
  return out;
}

inline SrrTriple iota(const HereditaryModel& m, const TubeData& td, const std::vector<SttObject>& tuple,
                      bool positive) {
  if (tuple.size() != td.count()) throw std::invalid_argument("one object per tube required");
  SrrTriple t;
  std::set<QuasiSimple> y;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    Nakayama lam(td.tubes[i].rank());
    if (!has_null_sign(lam, tuple[i], positive))
      throw std::invalid_argument("component " + std::to_string(i) + " has the wrong null sign");
    for (const auto& z : tuple[i].modules) {
      lam.check(z);
      if (lam.is_projective(z))
        y.insert({i, z.socle});
      else
        t.modules.push_back({i, z.socle, z.length});
    }
    for (auto j : tuple[i].shifted) y.insert({i, j});
  }
  (positive ? t.plus : t.minus) = pc(m, td, y);
  t.normalize();
  return t;
}

inline bool is_cluster(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  if (!is_srr(m, td, t) || !is_projectively_closed(m, td, t)) return false;
  for (std::size_t i = 0; i < td.count(); ++i)
    if (!is_support_tau_tilting(Nakayama(td.tubes[i].rank()), rho(m, td, t, i))) return false;
  return true;
}

namespace detail {

template <class T, class F>
void for_each_tuple(const std::vector<std::vector<T>>& lists, F f) {
  for (const auto& l : lists)
    if (l.empty()) return;
  std::vector<std::size_t> idx(lists.size(), 0);
  std::vector<T> cur(lists.size());
  while (true) {
    for (std::size_t i = 0; i < lists.size(); ++i) cur[i] = lists[i][idx[i]];
    f(cur);
    std::size_t i = 0;
    while (i < lists.size() && ++idx[i] == lists[i].size()) idx[i++] = 0;
    if (i == lists.size()) return;
  }
}

inline bool has_projective_module(const Nakayama& a, const SttObject& o) {
  for (const auto& z : o.modules)
    if (a.is_projective(z)) return true;
  return false;
}

}  // namespace detail

inline std::vector<SrrTriple> enumerate_clusters(const HereditaryModel& m, const TubeData& td) {
  std::vector<std::vector<SttObject>> pos_proj(td.count()), pos_free(td.count()), neg_shift(td.count()),
      neg_free(td.count());
  for (std::size_t i = 0; i < td.count(); ++i) {
    Nakayama a(td.tubes[i].rank());
    for (const auto& t : enumerate_stt(a)) {
      if (has_null_sign(a, t, true)) (detail::has_projective_module(a, t) ? pos_proj : pos_free)[i].push_back(t);
      if (has_null_sign(a, t, false)) (t.shifted.empty() ? neg_free : neg_shift)[i].push_back(t);
    }
  }
  std::set<SrrTriple> out;
  auto add = [&](bool positive) {
    return [&, positive](const std::vector<SttObject>& tuple) { out.insert(iota(m, td, tuple, positive)); };
  };
  detail::for_each_tuple(pos_proj, add(true));
  detail::for_each_tuple(pos_free, add(true));
  detail::for_each_tuple(neg_shift, add(false));
  detail::for_each_tuple(neg_free, add(false));
  std::vector<SrrTriple> v(out.begin(), out.end());
  for (const auto& t : v)
    if (!is_cluster(m, td, t)) throw InvariantViolation("iota produced a non-cluster " + to_string(td, t));
  return v;
}

inline std::vector<RatVec> cone_generators(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  std::vector<RatVec> g;
  for (const auto& x : t.modules) g.push_back(g0(m, td, x));
  for (const auto& p : t.plus) g.push_back(p.vec);
  for (const auto& p : t.minus) g.push_back(-p.vec);
  return g;
}

inline SrrCone cone_of(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  require_srr(m, td, t);
  return {t, Cone::from_generators(m.n(), cone_generators(m, td, t))};
}

// dimension predicted for a projectively closed triple
inline std::size_t predicted_cone_dim(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  if (t.projective_free()) return t.modules.size();
  std::size_t s = 0;
  for (const auto& o : rho_all(m, td, t)) s += o.size();
  return s + 1 - td.count();
}

// every triple (M, P+, P-) with M a compatible set of rigid bricks; closed_only restricts P to pc(Y)
inline std::vector<SrrTriple> enumerate_srr(const HereditaryModel& m, const TubeData& td, bool closed_only) {
  auto bricks = tube_rigid_bricks(td);
  if (bricks.size() > 20) throw std::invalid_argument("too many rigid bricks for enumeration");
  std::vector<std::vector<TubeModule>> ms;
  for (std::size_t mask = 0; mask < (std::size_t(1) << bricks.size()); ++mask) {
    SrrTriple t;
    for (std::size_t k = 0; k < bricks.size(); ++k)
      if (mask >> k & 1) t.modules.push_back(bricks[k]);
    if (is_srr(m, td, t)) ms.push_back(t.modules);
  }
  std::set<std::vector<ProjectiveVector>> psets;
  auto all = all_projective_vectors(m, td);
  if (closed_only) {
    std::vector<QuasiSimple> qs;
    for (std::size_t i = 0; i < td.count(); ++i)
      for (std::size_t j = 1; j <= td.tubes[i].rank(); ++j) qs.push_back({i, j});
    for (std::size_t mask = 0; mask < (std::size_t(1) << qs.size()); ++mask) {
      std::set<QuasiSimple> y;
      for (std::size_t k = 0; k < qs.size(); ++k)
        if (mask >> k & 1) y.insert(qs[k]);
      psets.insert(pc(m, td, y));
    }
  } else {
    if (all.size() > 16) throw std::invalid_argument("too many projective vectors for enumeration");
    for (std::size_t mask = 0; mask < (std::size_t(1) << all.size()); ++mask) {
      std::vector<ProjectiveVector> s;
      for (std::size_t k = 0; k < all.size(); ++k)
        if (mask >> k & 1) s.push_back(all[k]);
      psets.insert(s);
    }
  }
  std::set<SrrTriple> out;
  for (const auto& mod : ms)
    for (const auto& p : psets)
      for (bool positive : {true, false}) {
        SrrTriple t;
        t.modules = mod;
        (positive ? t.plus : t.minus) = p;
        t.normalize();
        if (is_srr(m, td, t)) out.insert(t);
      }
  return {out.begin(), out.end()};
}

struct SrrFan {
  std::vector<SrrCone> cones;
  FanReport report;
  bool dims_match = true;
  bool injective = true;
};

inline SrrFan build_srr_fan(const HereditaryModel& m, const TubeData& td) {
  SrrFan f;
  auto ts = enumerate_srr(m, td, true);
  f.cones = parallel_map<SrrCone>(ts.size(), [&](std::size_t k) { return cone_of(m, td, ts[k]); });
  std::vector<Cone> cs;
  for (const auto& c : f.cones) {
    cs.push_back(c.cone);
    if (c.cone.dim() != predicted_cone_dim(m, td, c.triple)) f.dims_match = false;
  }
  if (std::set<Cone>(cs.begin(), cs.end()).size() != cs.size()) f.injective = false;
  f.report = verify_fan(cs);
  if (!f.dims_match) f.report.violations.push_back("cone dimension differs from the formula");
  if (!f.injective) f.report.violations.push_back("two closed triples share a cone");
  f.report.ok = f.report.ok && f.dims_match && f.injective;
  return f;
}

struct ChamberBijection {
  bool ok = true;
  std::size_t clusters = 0;
  std::size_t chambers = 0;
  std::vector<std::string> failures;
};

inline ChamberBijection verify_chamber_bijection(const HereditaryModel& m, const TubeData& td) {
  ChamberBijection rep;
  auto cl = enumerate_clusters(m, td);
  auto s = regular_structure(m, td, false);
  rep.clusters = cl.size();
  rep.chambers = s.chambers.size();
  if (!s.report.verified) rep.failures.push_back("regular structure failed verification");
  if (rep.clusters != rep.chambers) rep.failures.push_back("cluster and chamber counts differ");
  std::set<long> hit;
  for (const auto& t : cl) {
    Cone c = cone_of(m, td, t).cone;
    RatVec v = c.interior_point();
    long k = s.locate(v);
    if (k < 0) {
      rep.failures.push_back("witness of " + to_string(td, t) + " lies on a wall");
      continue;
    }
    if (!hit.insert(k).second) rep.failures.push_back("two clusters share a chamber");
    if (s.chambers[static_cast<std::size_t>(k)] != c)
      rep.failures.push_back("cone of " + to_string(td, t) + " is not its chamber");
  }
  rep.ok = rep.failures.empty();
  return rep;
}

struct WallLabel {
  Cone face;
  bool eta = false;
  TubeModule brick;
  std::vector<TubeModule> covering;
  SrrTriple facet;
};

namespace detail {

inline std::vector<SttObject> stt_containing(const Nakayama& a, const SttObject& o) {
  std::vector<SttObject> out;
  for (const auto& t : enumerate_stt(a))
    if (contains_object(t, o)) out.push_back(t);
  return out;
}

inline WallLabel label_facet(const HereditaryModel& m, const TubeData& td, const SrrTriple& f) {
  WallLabel w;
  w.facet = f;
  w.face = cone_of(m, td, f).cone;
  auto rs = rho_all(m, td, f);
  if (f.projective_free()) {
    w.eta = true;
    for (std::size_t i = 0; i < td.count(); ++i) {
      Nakayama a(td.tubes[i].rank());
      std::optional<std::size_t> j;
      for (std::size_t v = 1; v <= a.rank(); ++v) {
        SttObject o = rs[i];
        o.shifted.push_back(v);
        o.normalize();
        if (is_support_tau_tilting(a, o)) {
          if (j) throw InvariantViolation("null-wall completion is not unique");
          j = v;
        }
      }
      if (!j) throw InvariantViolation("no null-wall completion");
      w.covering.push_back({i, *j, a.rank()});
    }
    return w;
  }
  std::optional<std::size_t> tube;
  for (std::size_t i = 0; i < td.count(); ++i) {
    std::size_t r = td.tubes[i].rank();
    if (rs[i].size() + 1 == r) {
      if (tube) throw InvariantViolation("facet deficient in two tubes");
      tube = i;
    } else if (rs[i].size() != r) {
      throw InvariantViolation("facet is not a wall face");
    }
  }
  if (!tube) throw InvariantViolation("facet is not deficient in any tube");
  Nakayama a(td.tubes[*tube].rank());
  auto both = stt_containing(a, rs[*tube]);
  if (both.size() != 2) throw InvariantViolation("almost complete object without two completions");
  auto ex = exchange_brick(a, both[0], both[1]);
  w.brick = {*tube, ex.brick.socle, ex.brick.length};
  return w;
}

}  // namespace detail

// codimension-one faces of a cluster cone with their labels
inline std::vector<WallLabel> wall_labels(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  if (!is_cluster(m, td, t)) throw std::invalid_argument("wall labels of a non-cluster");
  std::vector<SrrTriple> facets;
  for (std::size_t k = 0; k < t.modules.size(); ++k) {
    SrrTriple f = t;
    f.modules.erase(f.modules.begin() + static_cast<long>(k));
    facets.push_back(f);
  }
  bool positive = !t.plus.empty();
  const auto& ps = positive ? t.plus : t.minus;
  auto tops = tp(ps);
  if (ps.size() == 1) {
    SrrTriple f = t;
    (positive ? f.plus : f.minus).clear();
    facets.push_back(f);
    tops.clear();
  }
  for (const auto& [i, j] : tops) {
    std::size_t in_tube = 0;
    for (const auto& q : tops) in_tube += q.first == i;
    if (in_tube < 2) continue;
    SrrTriple f = t;
    auto& fs = positive ? f.plus : f.minus;
    std::erase_if(fs, [&, i = i, j = j](const ProjectiveVector& p) { return p.choice[i] == j; });
    facets.push_back(f);
  }
  std::vector<WallLabel> out;
  for (const auto& f : facets) out.push_back(detail::label_facet(m, td, f));
  return out;
}

inline bool is_imaginary_by_count(const SrrTriple& t) { return t.projective_count() == 1; }

inline bool is_imaginary_by_null_wall(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  Cone c = cone_intersect(cone_of(m, td, t).cone, d_reg_eta(m));
  return c.dim() + 2 == m.n();
}

inline bool is_imaginary_cluster(const HereditaryModel& m, const TubeData& td, const SrrTriple& t) {
  if (!is_cluster(m, td, t)) throw std::invalid_argument("not a cluster");
  bool a = is_imaginary_by_count(t), b = is_imaginary_by_null_wall(m, td, t);
  if (a != b) throw InvariantViolation("imaginary cluster criteria disagree");
  return a;
}

// lambda'_X = S^{1-m} prod lambda_ij, given the tube sums lambda_ij of a combination of P
inline std::vector<Rational> transportation_solution(const std::vector<ProjectiveVector>& ps,
                                                     const std::map<QuasiSimple, Rational>& sums,
                                                     std::size_t tubes) {
  Rational s = 0;
  for (const auto& [q, v] : sums)
    if (q.first == 0) s += v;
  std::vector<Rational> out;
  for (const auto& p : ps) {
    Rational x = 1;
    for (std::size_t i = 0; i < tubes; ++i) x *= sums.at({i, p.choice[i]});
    if (sgn(s) == 0) x = 0;
    for (std::size_t k = 1; k < tubes && sgn(s) != 0; ++k) x /= s;
    out.push_back(x);
  }
  return out;
}

}  // namespace wcs
