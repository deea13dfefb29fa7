#pragma once

#include <deque>

#include "wcs/coamalg.hpp"

namespace wcs {

struct MutationStep {
  std::size_t vertex = 0;
  int sign = 0;
  auto operator<=>(const MutationStep&) const = default;
};

// walls of a regular picture in g(eta)-perp, labeled by dimension vectors
struct PictureState {
  IntMatrix b;
  RatVec eta;
  RatVec g_eta;
  std::vector<LabeledCone> walls;
  std::vector<MutationStep> history;

  std::size_t n() const { return b.size(); }
  Subspace space() const { return Subspace(n(), {g_eta}); }
  bool is_null_label(const RatVec& d) const { return d == eta; }
};

struct NullData {
  RatVec eta;
  RatVec g_eta;
};

inline std::string wall_id(const TubeData& td, const TubeModule& x) {
  std::string s = module_name(td, x);
  if (x.qlen == td.tubes[x.tube].rank()) s += "/" + module_name(td, {x.tube, x.socle, 1});
  return s;
}

inline PictureState initial_picture(const HereditaryModel& m, const TubeData& td) {
  PictureState s;
  s.b = exchange_matrix(m.quiver);
  s.eta = m.eta;
  s.g_eta = m.g_eta;
  for (const auto& x : tube_bricks(td))
    s.walls.push_back({regular_domain(m, td, x), tube_module_dim(td, x), wall_id(td, x)});
  return s;
}

inline RatMatrix projection_off(const RatVec& g) {
  std::size_t n = g.size();
  RatMatrix p = identity(n);
  Rational gg = dot(g, g);
  if (sgn(gg) == 0) throw std::invalid_argument("projection off the zero vector");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p[i][j] -= g[i] * g[j] / gg;
  return p;
}

namespace detail {

inline bool nonnegative_integral(const RatVec& d) {
  for (const auto& x : d)
    if (sgn(x) < 0 || x.get_den() != 1) return false;
  return true;
}

inline void check_vertex(const PictureState& s, std::size_t k) {
  if (k < 1 || k > s.n()) throw std::out_of_range("mutation vertex out of range");
}

}  // namespace detail

inline NullData transport_null(const PictureState& s, std::size_t k) {
  detail::check_vertex(s, k);
  auto a = a_matrices(s.b, k);
  int sg = sgn(s.g_eta[k - 1]);
  NullData plus{matvec(a.plus, s.eta), matvec(transpose(a.plus, s.n()), s.g_eta)};
  NullData minus{matvec(a.minus, s.eta), matvec(transpose(a.minus, s.n()), s.g_eta)};
  NullData out = sg >= 0 ? plus : minus;
  if (sg == 0 && (plus.eta != minus.eta || plus.g_eta != minus.g_eta))
    throw InvariantViolation("null transports disagree on the regular side");
  if (!detail::nonnegative_integral(out.eta)) throw InvariantViolation("transported null root is not a dimension vector");
  if (sgn(dot(out.eta, out.g_eta)) != 0) throw InvariantViolation("transported null data are not orthogonal");
  return out;
}

struct TransportedPiece {
  LabeledCone wall;
  // old wall index -> side of v_k = 0 it came from (+1, -1, or 0 inside v_k = 0) and its old label
  std::map<std::size_t, std::pair<int, RatVec>> origin;
  bool null = false;
};

namespace detail {

inline std::vector<TransportedPiece> transport_pieces(const PictureState& s, const LabeledCone& w,
                                                      std::size_t index, std::size_t k) {
  check_vertex(s, k);
  auto a = a_matrices(s.b, k);
  std::size_t n = s.n();
  RatMatrix pt = transpose(a.plus, n), mt = transpose(a.minus, n);
  RatVec ek = unit(n, k - 1);
  int sg = sgn(s.g_eta[k - 1]);
  std::vector<std::pair<Cone, int>> parts;
  if (sg != 0) {
    parts.push_back({w.cone, sg});
  } else {
    bool flat = true;
    for (const auto& x : w.cone.generators())
      if (sgn(x[k - 1]) != 0) flat = false;
    if (flat) {
      // on v_k = 0 both maps agree
      RatVec lp = matvec(a.plus, w.label), lm = matvec(a.minus, w.label);
      RatVec label = w.label == ek ? ek : (nonnegative_integral(lp) ? lp : lm);
      if (!nonnegative_integral(label))
        throw InvariantViolation("transported label of " + w.module_id + " is not a dimension vector");
      return {{{w.cone.map(pt), label, w.module_id}, {{index, {0, w.label}}}, s.is_null_label(w.label)}};
    }
    Cone pos = w.cone.with_inequality(-ek), neg = w.cone.with_inequality(ek);
    if (pos.dim() == w.cone.dim()) parts.push_back({pos, 1});
    if (neg.dim() == w.cone.dim()) parts.push_back({neg, -1});
  }
  std::vector<TransportedPiece> out;
  for (const auto& [c, side] : parts) {
    RatVec label = matvec(side > 0 ? a.plus : a.minus, w.label);
    if (!nonnegative_integral(label))
      throw InvariantViolation("transported label of " + w.module_id + " is not a dimension vector");
    out.push_back({{c.map(side > 0 ? pt : mt), label, w.module_id}, {{index, {side, w.label}}}, s.is_null_label(w.label)});
  }
  return out;
}

// distinct bricks: the two halves of one old wall, or same-side images of distinct non-null old
// walls with equal labels
inline bool distinct_bricks(const TransportedPiece& x, const TransportedPiece& y) {
  for (const auto& [i, a] : x.origin)
    for (const auto& [j, b] : y.origin) {
      if (i == j && a.first * b.first < 0) return true;
      if (i != j && !(x.null && y.null) && a.first == b.first && a.second == b.second) return true;
    }
  return false;
}

inline void sort_walls(std::vector<LabeledCone>& ws) {
  std::sort(ws.begin(), ws.end(), [](const LabeledCone& x, const LabeledCone& y) {
    if (x.label != y.label) return x.label < y.label;
    if (x.module_id != y.module_id) return x.module_id < y.module_id;
    return x.cone < y.cone;
  });
}

}  // namespace detail

// pieces of one wall under mutation at k, before projection onto the new g(eta)-perp
inline std::vector<LabeledCone> transport_wall(const PictureState& s, const LabeledCone& w, std::size_t k) {
  std::vector<LabeledCone> out;
  for (auto& p : detail::transport_pieces(s, w, 0, k)) out.push_back(std::move(p.wall));
  return out;
}

// same-label pieces are glued when their union is convex and they can come from one brick;
// glued walls are renamed by label, with a suffix when a label repeats
inline std::vector<LabeledCone> merge_pieces(std::vector<TransportedPiece> ps) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < ps.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < ps.size() && !changed; ++j) {
        const Cone& a = ps[i].wall.cone;
        const Cone& b = ps[j].wall.cone;
        if (ps[i].wall.label != ps[j].wall.label || detail::distinct_bricks(ps[i], ps[j])) continue;
        std::vector<RatVec> g = a.generators();
        for (const auto& x : b.generators()) g.push_back(x);
        Cone hull = Cone::from_generators(a.ambient_dim(), g);
        if (hull.dim() != a.dim() || !detail::covered(hull, {&a, &b})) continue;
        ps[i].wall.cone = hull;
        for (const auto& o : ps[j].origin) ps[i].origin.insert(o);
        ps.erase(ps.begin() + static_cast<long>(j));
        changed = true;
      }
  }
  std::vector<LabeledCone> ws;
  for (auto& p : ps) ws.push_back(std::move(p.wall));
  for (auto& w : ws) w.module_id.clear();
  detail::sort_walls(ws);
  for (std::size_t i = 0; i < ws.size();) {
    std::size_t j = i;
    while (j < ws.size() && ws[j].label == ws[i].label) ++j;
    for (std::size_t t = i; t < j; ++t)
      ws[t].module_id = support_string(ws[t].label) + (j - i > 1 ? "#" + std::to_string(t - i + 1) : "");
    i = j;
  }
  return ws;
}

inline PictureState mutate_picture(const PictureState& s, std::size_t k, bool verify = true) {
  NullData nd = transport_null(s, k);
  PictureState out;
  out.b = fz_mutate(s.b, k);
  out.eta = nd.eta;
  out.g_eta = nd.g_eta;
  out.history = s.history;
  out.history.push_back({k, sgn(s.g_eta[k - 1])});
  RatMatrix p = projection_off(nd.g_eta);
  auto pieces = parallel_map<std::vector<TransportedPiece>>(s.walls.size(), [&](std::size_t i) {
    auto ps = detail::transport_pieces(s, s.walls[i], i, k);
    for (auto& w : ps) w.wall.cone = w.wall.cone.map(p);
    return ps;
  });
  std::vector<TransportedPiece> all;
  for (auto& v : pieces)
    for (auto& w : v) all.push_back(std::move(w));
  out.walls = merge_pieces(std::move(all));
  for (const auto& w : out.walls)
    if (sgn(dot(w.label, out.g_eta)) != 0) throw InvariantViolation("label leaves the new regular space");
  if (verify) {
    auto ws = verify_wall_chamber(out.walls, out.space(), false);
    if (!ws.report.verified) throw InvariantViolation("transported picture fails the wall-and-chamber axioms");
  }
  return out;
}

// vertex i of the old picture becomes vertex sigma[i-1]
inline PictureState relabel(const PictureState& s, const std::vector<std::size_t>& sigma) {
  std::size_t n = s.n();
  std::vector<std::size_t> sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i)
    if (sorted.size() != n || sorted[i] != i + 1) throw std::invalid_argument("not a permutation");
  RatMatrix p(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) p[sigma[i] - 1][i] = 1;
  PictureState out;
  out.b.assign(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.b[sigma[i] - 1][sigma[j] - 1] = s.b[i][j];
  out.eta = matvec(p, s.eta);
  out.g_eta = matvec(p, s.g_eta);
  out.history = s.history;
  for (const auto& w : s.walls) out.walls.push_back({w.cone.map(p), matvec(p, w.label), w.module_id});
  detail::sort_walls(out.walls);
  return out;
}

// same walls up to subdivision: for every label the unions of the labeled cones agree
inline bool same_picture(const PictureState& x, const PictureState& y) {
  if (x.b != y.b || x.eta != y.eta || x.g_eta != y.g_eta) return false;
  std::map<RatVec, std::vector<const Cone*>> cx, cy;
  for (const auto& w : x.walls) cx[w.label].push_back(&w.cone);
  for (const auto& w : y.walls) cy[w.label].push_back(&w.cone);
  if (cx.size() != cy.size()) return false;
  for (const auto& [d, ps] : cx) {
    auto it = cy.find(d);
    if (it == cy.end()) return false;
    for (const Cone* c : ps)
      if (!detail::covered(*c, it->second)) return false;
    for (const Cone* c : it->second)
      if (!detail::covered(*c, ps)) return false;
  }
  return true;
}

inline std::vector<RatVec> non_null_labels(const PictureState& s) {
  std::vector<RatVec> out;
  for (const auto& w : s.walls)
    if (!s.is_null_label(w.label)) out.push_back(w.label);
  std::sort(out.begin(), out.end());
  return out;
}

// f-vector of a cone: number of faces in each dimension
inline std::vector<std::size_t> f_vector(const Cone& c) {
  std::vector<std::size_t> f(c.dim() + 1, 0);
  for (const auto& x : faces(c)) ++f[x.dim()];
  return f;
}

struct PictureSignature {
  std::size_t chambers = 0;
  std::size_t walls = 0;
  std::size_t null_walls = 0;
  // codimension-one cells separating adjacent chambers
  std::size_t wall_cells = 0;
  std::vector<std::vector<std::size_t>> chamber_f_vectors;
  bool verified = false;
  auto operator<=>(const PictureSignature&) const = default;
};

inline PictureSignature signature(const PictureState& s) {
  PictureSignature sig;
  auto ws = verify_wall_chamber(s.walls, s.space(), false);
  sig.verified = ws.report.verified;
  sig.chambers = ws.chambers.size();
  sig.wall_cells = ws.adjacency.size();
  sig.walls = s.walls.size();
  for (const auto& w : s.walls) sig.null_walls += s.is_null_label(w.label);
  for (const auto& c : ws.chambers) sig.chamber_f_vectors.push_back(f_vector(c));
  std::sort(sig.chamber_f_vectors.begin(), sig.chamber_f_vectors.end());
  return sig;
}

struct InvarianceReport {
  bool ok = true;
  std::vector<PictureSignature> steps;
  std::vector<std::string> failures;
};

inline InvarianceReport verify_mutation_invariance(const HereditaryModel& m, const TubeData& td,
                                                   const std::vector<std::size_t>& sequence) {
  InvarianceReport rep;
  PictureState s = initial_picture(m, td);
  rep.steps.push_back(signature(s));
  for (auto k : sequence) {
    try {
      s = mutate_picture(s, k);
    } catch (const InvariantViolation& e) {
      rep.failures.push_back("mutation at " + std::to_string(k) + ": " + e.what());
      rep.ok = false;
      return rep;
    }
    rep.steps.push_back(signature(s));
    const auto& a = rep.steps.front();
    const auto& b = rep.steps.back();
    if (!b.verified) rep.failures.push_back("step " + std::to_string(rep.steps.size() - 1) + " fails the axioms");
    if (a.chambers != b.chambers)
      rep.failures.push_back("chamber count changes at step " + std::to_string(rep.steps.size() - 1));
    if (a.wall_cells != b.wall_cells)
      rep.failures.push_back("wall cell count changes at step " + std::to_string(rep.steps.size() - 1));
    if (a.chamber_f_vectors != b.chamber_f_vectors)
      rep.failures.push_back("chamber face lattices change at step " + std::to_string(rep.steps.size() - 1));
  }
  rep.ok = rep.failures.empty();
  return rep;
}

// breadth-first search over mutation sequences, transporting only the null data
struct NullSearchResult {
  std::vector<std::size_t> sequence;
  IntMatrix b;
  NullData null;
};

inline std::optional<NullSearchResult> find_mutation_sequence(const PictureState& start,
                                                              const std::function<bool(const IntMatrix&, const NullData&)>& goal,
                                                              std::size_t max_len) {
  struct Node {
    IntMatrix b;
    NullData nd;
    std::vector<std::size_t> seq;
  };
  std::deque<Node> q{{start.b, {start.eta, start.g_eta}, {}}};
  std::set<std::pair<IntMatrix, RatVec>> seen{{start.b, start.eta}};
  while (!q.empty()) {
    Node cur = q.front();
    q.pop_front();
    if (goal(cur.b, cur.nd)) return NullSearchResult{cur.seq, cur.b, cur.nd};
    if (cur.seq.size() == max_len) continue;
    for (std::size_t k = 1; k <= cur.b.size(); ++k) {
      PictureState s;
      s.b = cur.b;
      s.eta = cur.nd.eta;
      s.g_eta = cur.nd.g_eta;
      Node next{fz_mutate(cur.b, k), transport_null(s, k), cur.seq};
      next.seq.push_back(k);
      if (seen.insert({next.b, next.nd.eta}).second) q.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

// vertex sets of the chordless unoriented cycles of the quiver of b; a double arrow is a 2-cycle
inline std::vector<std::vector<std::size_t>> minimal_unoriented_cycles(const IntMatrix& b) {
  std::size_t n = b.size();
  if (n > 20) throw std::invalid_argument("cycle search limited to 20 vertices");
  std::vector<std::vector<std::size_t>> out;
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<std::size_t> vs;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) vs.push_back(i);
    if (vs.size() < 2) continue;
    if (vs.size() == 2) {
      if (std::labs(b[vs[0]][vs[1]]) >= 2) out.push_back({vs[0] + 1, vs[1] + 1});
      continue;
    }
    bool ok = true;
    for (auto v : vs) {
      std::size_t deg = 0;
      for (auto u : vs)
        if (b[v][u] != 0) deg += static_cast<std::size_t>(std::labs(b[v][u]));
      if (deg != 2) ok = false;
    }
    if (!ok) continue;
    // walk the cycle, checking connectivity and orientation
    std::vector<std::size_t> cyc{vs[0]};
    std::size_t prev = n;
    long forward = 0, backward = 0;
    while (true) {
      std::size_t cur = cyc.back(), next = n;
      for (auto u : vs)
        if (b[cur][u] != 0 && u != prev && !(cyc.size() > 1 && u == cyc[cyc.size() - 2])) {
          next = u;
          break;
        }
      if (next == n) break;
      (b[cur][next] > 0 ? forward : backward) += 1;
      if (next == cyc[0]) break;
      prev = cur;
      cyc.push_back(next);
    }
    if (cyc.size() != vs.size() || forward == 0 || backward == 0) continue;
    std::vector<std::size_t> one;
    for (auto v : vs) one.push_back(v + 1);
    out.push_back(one);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::size_t> support(const RatVec& d) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (sgn(d[i]) != 0) s.push_back(i + 1);
  return s;
}

}  // namespace wcs
