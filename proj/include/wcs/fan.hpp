#pragma once

#include <numeric>
#include <unordered_map>

#include "wcs/cone.hpp"
#include "wcs/parallel.hpp"

namespace wcs {

struct LabeledCone {
  Cone cone;
  RatVec label;
  std::string module_id;
};

// linear subspace {x : e.x = 0} of R^n with a fixed basis, used as an ambient space
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t n, const std::vector<RatVec>& eqs) : n_(n) {
    eqs_ = canonical_basis(eqs, n);
    basis_ = canonical_basis(kernel(eqs_, n), n);
  }
  static Subspace whole(std::size_t n) { return Subspace(n, {}); }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<RatVec>& equations() const { return eqs_; }
  const std::vector<RatVec>& basis() const { return basis_; }

  bool contains(const RatVec& x) const {
    for (const auto& e : eqs_)
      if (sgn(dot(e, x)) != 0) return false;
    return true;
  }

  RatVec pull_covector(const RatVec& a) const {
    RatVec y(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) y[i] = dot(a, basis_[i]);
    return y;
  }

  RatVec push(const RatVec& y) const {
    RatVec x = zeros(n_);
    for (std::size_t i = 0; i < basis_.size(); ++i) x = x + y[i] * basis_[i];
    return x;
  }

  RatVec coords(const RatVec& x) const {
    RatMatrix a = transpose(basis_, n_);
    auto s = solve_affine(a, x, basis_.size());
    if (!s) throw DimensionMismatch("point outside the subspace");
    return s->particular;
  }

  Cone pull(const Cone& c) const {
    std::vector<RatVec> e, h;
    for (const auto& a : c.equations()) e.push_back(pull_covector(a));
    for (const auto& a : c.inequalities()) h.push_back(pull_covector(a));
    return Cone::from_hrep(dim(), e, h);
  }

  Cone push(const Cone& c) const {
    std::vector<RatVec> g;
    for (const auto& y : c.generators()) g.push_back(push(y));
    if (g.empty()) return Cone::zero(n_);
    Cone out = Cone::from_generators(n_, g);
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<RatVec> eqs_;
  std::vector<RatVec> basis_;
};

struct FanReport {
  bool ok = true;
  bool strictly_convex = true;
  bool rational = true;
  bool face_closed = true;
  bool intersections_are_faces = true;
  std::vector<std::string> violations;
};

inline FanReport verify_fan(const std::vector<Cone>& cones) {
  FanReport r;
  std::set<Cone> members(cones.begin(), cones.end());
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (!cones[i].strictly_convex()) {
      r.strictly_convex = false;
      r.violations.push_back("cone " + std::to_string(i) + " is not strictly convex");
    }
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (const auto& f : faces(cones[i]))
      if (!members.count(f)) {
        r.face_closed = false;
        r.violations.push_back("face of cone " + std::to_string(i) + " missing: " + f.key());
        break;
      }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) pairs.emplace_back(i, j);
  auto good = parallel_map<char>(pairs.size(), [&](std::size_t k) {
    const Cone& a = cones[pairs[k].first];
    const Cone& b = cones[pairs[k].second];
    Cone x = cone_intersect(a, b);
    return static_cast<char>(is_face(x, a) && is_face(x, b));
  });
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (!good[k]) {
      r.intersections_are_faces = false;
      r.violations.push_back("intersection of cones " + std::to_string(pairs[k].first) + " and " +
                             std::to_string(pairs[k].second) + " is not a face of both");
    }
  r.ok = r.strictly_convex && r.rational && r.face_closed && r.intersections_are_faces;
  return r;
}

struct WallChamberReport {
  bool verified = false;
  bool closed_under_intersection = true;
  bool walls_in_codim_one = true;
  bool chambers_convex = true;
  std::size_t closure_size = 0;
  std::size_t cell_count = 0;
  std::vector<std::string> violations;
};

struct WallChamberStructure {
  Subspace space;
  std::vector<LabeledCone> walls;
  std::vector<Cone> closure;
  std::vector<Cone> chambers;
  std::vector<RatVec> chamber_points;
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;
  WallChamberReport report;

  std::size_t ambient_dim() const { return space.ambient_dim(); }

  bool on_wall(const RatVec& x) const {
    for (const auto& w : walls)
      if (w.cone.contains(x)) return true;
    return false;
  }

  // index of the open chamber containing x, or -1 when x lies on a wall
  long locate(const RatVec& x) const {
    if (!space.contains(x) || on_wall(x)) return -1;
    for (std::size_t i = 0; i < chambers.size(); ++i)
      if (chambers[i].contains(x)) return static_cast<long>(i);
    return -1;
  }

  // distinct pieces of the wall union on the unit sphere: a line gives two rays, and pieces inside another are dropped
  std::size_t sphere_wall_count() const {
    std::set<Cone> pieces;
    for (const auto& w : walls) {
      if (w.cone.dim() == 1 && !w.cone.strictly_convex()) {
        for (const auto& g : w.cone.generators()) pieces.insert(Cone::from_generators(ambient_dim(), {g}));
      } else {
        pieces.insert(w.cone);
      }
    }
    std::size_t c = 0;
    for (const auto& p : pieces) {
      bool inside = false;
      for (const auto& q : pieces)
        if (!(q == p) && q.contains(p)) inside = true;
      c += !inside;
    }
    return c;
  }
};

namespace detail {

inline RatVec normalize_hyperplane(const RatVec& a) {
  RatVec p = primitive(a);
  for (const auto& x : p)
    if (sgn(x) != 0) return sgn(x) < 0 ? RatVec(-p) : p;
  return p;
}

inline bool covered(const Cone& f, const std::vector<const Cone*>& pieces) {
  if (pieces.empty()) return false;
  for (const Cone* k : pieces)
    if (k->contains(f)) return true;
  for (const Cone* k : pieces) {
    if (cone_intersect(*k, f).dim() < f.dim()) continue;
    for (const auto& h : k->inequalities())
      if (f.side(h) == 2) {
        Cone a = f.with_inequality(h);
        Cone b = f.with_inequality(-h);
        return covered(a, pieces) && covered(b, pieces);
      }
  }
  return false;
}

struct UnionFind {
  std::vector<std::size_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

}  // namespace detail

inline std::vector<Cone> intersection_closure(const std::vector<Cone>& walls) {
  std::set<Cone> all(walls.begin(), walls.end());
  std::vector<Cone> frontier(all.begin(), all.end());
  while (!frontier.empty()) {
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (std::size_t j = 0; j < walls.size(); ++j) jobs.emplace_back(i, j);
    auto res = parallel_map<Cone>(jobs.size(), [&](std::size_t k) {
      return cone_intersect(frontier[jobs[k].first], walls[jobs[k].second]);
    });
    std::vector<Cone> next;
    for (auto& c : res)
      if (all.insert(c).second) next.push_back(c);
    frontier = std::move(next);
  }
  return {all.begin(), all.end()};
}

// walls live in the subspace `space`; chambers are enumerated inside that subspace
inline WallChamberStructure verify_wall_chamber(const std::vector<LabeledCone>& walls,
                                                const Subspace& space, bool check_closure = true) {
  WallChamberStructure s;
  s.space = space;
  s.walls = walls;
  std::size_t d = space.dim();
  auto& rep = s.report;
  std::vector<Cone> local;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const Cone& w = walls[i].cone;
    for (const auto& g : w.generators())
      if (!space.contains(g)) throw DimensionMismatch("wall outside the ambient subspace");
    local.push_back(space.pull(w));
  }
  if (check_closure) {
    s.closure = intersection_closure(local);
    rep.closure_size = s.closure.size();
    for (auto& c : s.closure) c = space.push(c);
  }
  for (std::size_t i = 0; i < local.size(); ++i)
    if (local[i].dim() + 1 != d) {
      bool inside = false;
      for (const auto& w : local)
        if (w.dim() + 1 == d && w.contains(local[i])) inside = true;
      if (!inside) {
        rep.walls_in_codim_one = false;
        rep.violations.push_back("wall " + std::to_string(i) + " lies in no codimension-one wall");
      }
    }
  std::vector<RatVec> hyperplanes;
  std::map<RatVec, std::vector<const Cone*>> pieces;
  for (const auto& w : local) {
    if (w.dim() + 1 != d) continue;
    RatVec h = detail::normalize_hyperplane(w.equations().at(0));
    if (!pieces.count(h)) hyperplanes.push_back(h);
    pieces[h].push_back(&w);
  }
  std::vector<Cone> cells{Cone::whole(d)};
  for (const auto& h : hyperplanes) {
    auto split = parallel_map<std::vector<Cone>>(cells.size(), [&](std::size_t i) {
      const Cone& c = cells[i];
      if (c.side(h) != 2) return std::vector<Cone>{c};
      return std::vector<Cone>{c.with_inequality(h), c.with_inequality(-h)};
    });
    std::vector<Cone> next;
    for (auto& v : split)
      for (auto& c : v) next.push_back(std::move(c));
    cells = std::move(next);
  }
  std::sort(cells.begin(), cells.end());
  rep.cell_count = cells.size();
  std::vector<RatVec> points;
  std::map<std::vector<int>, std::size_t> by_sign;
  std::vector<std::vector<int>> signs;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    RatVec p = cells[i].interior_point();
    std::vector<int> sv;
    for (const auto& h : hyperplanes) sv.push_back(sgn(dot(h, p)));
    by_sign[sv] = i;
    signs.push_back(sv);
    points.push_back(p);
  }
  struct Crossing {
    std::size_t a, b, h;
  };
  std::vector<Crossing> crossings;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t k = 0; k < hyperplanes.size(); ++k) {
      if (signs[i][k] >= 0) continue;
      std::vector<int> sv = signs[i];
      sv[k] = 1;
      auto it = by_sign.find(sv);
      if (it != by_sign.end()) crossings.push_back({i, it->second, k});
    }
  // 0 open crossing, 1 crossing blocked by walls, 2 open crossing with a slit of some wall
  auto blocked = parallel_map<char>(crossings.size(), [&](std::size_t t) {
    const auto& c = crossings[t];
    Cone f = cells[c.a].with_equation(hyperplanes[c.h]);
    if (f.dim() + 1 != d) return static_cast<char>(0);
    const auto& ps = pieces[hyperplanes[c.h]];
    if (detail::covered(f, ps)) return static_cast<char>(1);
    for (const Cone* k : ps)
      if (cone_intersect(*k, f).dim() + 1 == d) return static_cast<char>(2);
    return static_cast<char>(0);
  });
  detail::UnionFind uf(cells.size());
  for (std::size_t t = 0; t < crossings.size(); ++t)
    if (blocked[t] != 1) uf.unite(crossings[t].a, crossings[t].b);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cells.size(); ++i) groups[uf.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> gl;
  for (auto& [k, v] : groups) gl.push_back(v);
  std::sort(gl.begin(), gl.end());
  std::vector<std::size_t> chamber_of(cells.size());
  std::vector<Cone> local_chambers;
  for (std::size_t g = 0; g < gl.size(); ++g) {
    std::vector<RatVec> gens;
    for (auto i : gl[g]) {
      chamber_of[i] = g;
      for (const auto& x : cells[i].generators()) gens.push_back(x);
    }
    Cone hull = Cone::from_generators(d, gens);
    bool convex = true;
    std::set<RatVec> hs(hyperplanes.begin(), hyperplanes.end());
    for (const auto& f : hull.inequalities())
      if (!hs.count(detail::normalize_hyperplane(f))) convex = false;
    std::size_t inside = 0;
    for (const auto& p : points)
      if (hull.contains(p)) ++inside;
    if (inside != gl[g].size()) convex = false;
    for (std::size_t t = 0; t < crossings.size(); ++t)
      if (blocked[t] == 2 && uf.find(crossings[t].a) == uf.find(gl[g][0])) convex = false;
    if (!convex) {
      rep.chambers_convex = false;
      rep.violations.push_back("chamber " + std::to_string(g) + " is not convex");
    }
    local_chambers.push_back(hull);
  }
  std::set<std::pair<std::size_t, std::size_t>> adj;
  for (std::size_t t = 0; t < crossings.size(); ++t) {
    std::size_t a = chamber_of[crossings[t].a], b = chamber_of[crossings[t].b];
    if (a != b) adj.insert({std::min(a, b), std::max(a, b)});
  }
  s.adjacency.assign(adj.begin(), adj.end());
  for (std::size_t g = 0; g < gl.size(); ++g) {
    s.chambers.push_back(space.push(local_chambers[g]));
    s.chamber_points.push_back(space.push(points[gl[g][0]]));
  }
  rep.verified = rep.closed_under_intersection && rep.walls_in_codim_one && rep.chambers_convex;
  return s;
}

inline WallChamberStructure verify_wall_chamber(const std::vector<LabeledCone>& walls,
                                                std::size_t n) {
  return verify_wall_chamber(walls, Subspace::whole(n));
}

}  // namespace wcs
