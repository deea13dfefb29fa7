#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "wcs/cone.hpp"
#include "wcs/rep.hpp"

namespace wcs {

// Y_{j,l}: socle S(j), length l, composition factors j, j+1, ..., j+l-1 (indices mod r, 1-based)
struct NakModule {
  std::size_t socle = 1;
  std::size_t length = 1;

  auto operator<=>(const NakModule&) const = default;
};

inline std::size_t wrap(long i, std::size_t r) {
  long m = static_cast<long>(r);
  return static_cast<std::size_t>(((i - 1) % m + m) % m + 1);
}

class Nakayama {
 public:
  explicit Nakayama(std::size_t r) : r_(r) {
    if (r < 1) throw std::invalid_argument("Nakayama rank must be positive");
  }

  std::size_t rank() const { return r_; }

  void check(const NakModule& y) const {
    if (y.socle < 1 || y.socle > r_ || y.length < 1 || y.length > r_ + 1)
      throw std::invalid_argument("not a module of this algebra");
  }

  bool is_projective(const NakModule& y) const { return y.length == r_ + 1; }
  bool is_brick(const NakModule& y) const { return y.length <= r_; }
  NakModule projective(std::size_t i) const { return {i, r_ + 1}; }
  NakModule simple(std::size_t i) const { return {i, 1}; }
  std::size_t top(const NakModule& y) const { return wrap(static_cast<long>(y.socle + y.length) - 1, r_); }

  std::vector<NakModule> indecomposables() const {
    std::vector<NakModule> out;
    for (std::size_t j = 1; j <= r_; ++j)
      for (std::size_t l = 1; l <= r_ + 1; ++l) out.push_back({j, l});
    return out;
  }

  std::optional<NakModule> tau(const NakModule& y) const {
    check(y);
    if (is_projective(y)) return std::nullopt;
    return NakModule{wrap(static_cast<long>(y.socle) - 1, r_), y.length};
  }

  RatVec dim(const NakModule& y) const {
    RatVec d = zeros(r_);
    for (std::size_t t = 0; t < y.length; ++t) d[wrap(static_cast<long>(y.socle + t), r_) - 1] += 1;
    return d;
  }

  // arrows v -> v-1; basis vector b_t sits at vertex socle+t and maps to b_{t-1}
  Rep rep(const NakModule& y) const {
    check(y);
    Rep m;
    m.dim.assign(r_, 0);
    std::vector<std::size_t> vertex(y.length), local(y.length);
    for (std::size_t t = 0; t < y.length; ++t) {
      vertex[t] = wrap(static_cast<long>(y.socle + t), r_) - 1;
      local[t] = m.dim[vertex[t]]++;
    }
    for (std::size_t v = 0; v < r_; ++v) {
      std::size_t w = (v + r_ - 1) % r_;
      RatMatrix a(m.dim[w], zeros(m.dim[v]));
      for (std::size_t t = 1; t < y.length; ++t)
        if (vertex[t] == v) a[local[t - 1]][local[t]] = 1;
      m.arrows.push_back({v, w, a});
    }
    return m;
  }

  std::size_t hom_dim(const NakModule& a, const NakModule& b) const {
    std::lock_guard<std::mutex> g(*mu_);
    auto key = std::make_pair(a, b);
    auto it = hom_cache_->find(key);
    if (it != hom_cache_->end()) return it->second;
    std::size_t h = hom_dimension(rep(a), rep(b));
    (*hom_cache_)[key] = h;
    return h;
  }

  std::size_t hom_dim_sum(const std::vector<NakModule>& as, const std::vector<NakModule>& bs) const {
    std::size_t s = 0;
    for (const auto& a : as)
      for (const auto& b : bs) s += hom_dim(a, b);
    return s;
  }

  bool is_tau_rigid(const NakModule& y) const {
    auto t = tau(y);
    return !t || hom_dim(y, *t) == 0;
  }

  RatVec g_vector(const NakModule& y) const {
    check(y);
    if (is_projective(y)) return unit(r_, y.socle - 1);
    RatVec g = unit(r_, top(y) - 1);
    g[wrap(static_cast<long>(y.socle) - 1, r_) - 1] -= 1;
    return g;
  }

  RatVec shifted_g_vector(std::size_t i) const { return -unit(r_, i - 1); }

  // {v : v.dim Y = 0, v.dim Y_{j,l'} <= 0 for l' < l}
  Cone domain(const NakModule& y) const {
    check(y);
    if (!is_brick(y)) throw std::invalid_argument("domain of a non-brick");
    std::vector<RatVec> h;
    for (std::size_t l = 1; l < y.length; ++l) h.push_back(dim({y.socle, l}));
    return Cone::from_hrep(r_, {dim(y)}, h);
  }

  std::vector<NakModule> submodules(const NakModule& y) const {
    std::vector<NakModule> s;
    for (std::size_t l = 1; l <= y.length; ++l) s.push_back({y.socle, l});
    return s;
  }

 private:
  std::size_t r_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  std::shared_ptr<std::map<std::pair<NakModule, NakModule>, std::size_t>> hom_cache_ =
      std::make_shared<std::map<std::pair<NakModule, NakModule>, std::size_t>>();
};

inline std::string to_string(const NakModule& y) {
  return "Y(" + std::to_string(y.socle) + "," + std::to_string(y.length) + ")";
}

// M + P[1]; shifted holds the vertices i of the summands P(i)[1]
struct SttObject {
  std::vector<NakModule> modules;
  std::vector<std::size_t> shifted;

  void normalize() {
    std::sort(modules.begin(), modules.end());
    modules.erase(std::unique(modules.begin(), modules.end()), modules.end());
    std::sort(shifted.begin(), shifted.end());
    shifted.erase(std::unique(shifted.begin(), shifted.end()), shifted.end());
  }
  std::size_t size() const { return modules.size() + shifted.size(); }
  auto operator<=>(const SttObject&) const = default;

  std::string key() const {
    std::string s;
    for (const auto& m : modules) s += to_string(m);
    s += "|";
    for (auto i : shifted) s += "P" + std::to_string(i) + "[1]";
    return s;
  }
};

// indecomposable summand of a support tau-rigid object: a module or a shifted projective
struct Summand {
  bool shift = false;
  NakModule module;
  std::size_t vertex = 0;
  auto operator<=>(const Summand&) const = default;
};

inline std::vector<Summand> summands(const SttObject& t) {
  std::vector<Summand> out;
  for (const auto& m : t.modules) out.push_back({false, m, 0});
  for (auto i : t.shifted) out.push_back({true, {}, i});
  return out;
}

inline SttObject from_summands(const std::vector<Summand>& ss) {
  SttObject t;
  for (const auto& s : ss)
    if (s.shift)
      t.shifted.push_back(s.vertex);
    else
      t.modules.push_back(s.module);
  t.normalize();
  return t;
}

inline bool compatible(const Nakayama& a, const Summand& x, const Summand& y) {
  if (x.shift && y.shift) return true;
  if (x.shift) return a.hom_dim(a.projective(x.vertex), y.module) == 0;
  if (y.shift) return a.hom_dim(a.projective(y.vertex), x.module) == 0;
  auto tx = a.tau(x.module), ty = a.tau(y.module);
  if (ty && a.hom_dim(x.module, *ty) != 0) return false;
  if (tx && a.hom_dim(y.module, *tx) != 0) return false;
  return true;
}

inline bool is_support_tau_rigid(const Nakayama& a, const SttObject& t) {
  auto ss = summands(t);
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (!ss[i].shift && !a.is_tau_rigid(ss[i].module)) return false;
    for (std::size_t j = i + 1; j < ss.size(); ++j)
      if (!compatible(a, ss[i], ss[j])) return false;
  }
  return true;
}

inline bool is_support_tau_tilting(const Nakayama& a, const SttObject& t) {
  return t.size() == a.rank() && is_support_tau_rigid(a, t);
}

// indecomposable tau-rigid modules and shifted projectives, classified through hom_dim
inline std::vector<Summand> rigid_summands(const Nakayama& a) {
  std::vector<Summand> out;
  for (const auto& y : a.indecomposables())
    if (a.is_tau_rigid(y)) out.push_back({false, y, 0});
  for (std::size_t i = 1; i <= a.rank(); ++i) out.push_back({true, {}, i});
  return out;
}

inline std::vector<SttObject> enumerate_stt_bruteforce(const Nakayama& a) {
  auto cand = rigid_summands(a);
  std::size_t k = cand.size(), r = a.rank();
  std::vector<std::vector<char>> ok(k, std::vector<char>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) ok[i][j] = i != j && compatible(a, cand[i], cand[j]);
  std::vector<SttObject> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> go = [&](std::size_t start) {
    if (pick.size() == r) {
      std::vector<Summand> ss;
      for (auto i : pick) ss.push_back(cand[i]);
      out.push_back(from_summands(ss));
      return;
    }
    for (std::size_t i = start; i < k; ++i) {
      bool fits = true;
      for (auto p : pick)
        if (!ok[p][i]) {
          fits = false;
          break;
        }
      if (!fits) continue;
      pick.push_back(i);
      go(i + 1);
      pick.pop_back();
    }
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

struct SttGraph {
  std::vector<SttObject> objects;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// exchange graph explored from the algebra itself; each almost complete object has exactly two
// completions
inline SttGraph enumerate_stt_mutation(const Nakayama& a) {
  auto cand = rigid_summands(a);
  SttObject start;
  for (std::size_t i = 1; i <= a.rank(); ++i) start.modules.push_back(a.projective(i));
  start.normalize();
  std::map<SttObject, std::size_t> index{{start, 0}};
  SttGraph g;
  g.objects.push_back(start);
  for (std::size_t q = 0; q < g.objects.size(); ++q) {
    SttObject t = g.objects[q];
    auto ss = summands(t);
    for (std::size_t drop = 0; drop < ss.size(); ++drop) {
      std::vector<Summand> rest;
      for (std::size_t i = 0; i < ss.size(); ++i)
        if (i != drop) rest.push_back(ss[i]);
      std::vector<Summand> others;
      for (const auto& c : cand) {
        if (std::find(ss.begin(), ss.end(), c) != ss.end()) continue;
        bool fits = true;
        for (const auto& x : rest)
          if (!compatible(a, x, c)) {
            fits = false;
            break;
          }
        if (fits) others.push_back(c);
      }
      if (others.size() != 1)
        throw InvariantViolation("almost complete object with " + std::to_string(others.size() + 1) +
                                 " completions");
      rest.push_back(others[0]);
      SttObject u = from_summands(rest);
      auto it = index.find(u);
      std::size_t id;
      if (it == index.end()) {
        id = g.objects.size();
        index[u] = id;
        g.objects.push_back(u);
      } else {
        id = it->second;
      }
      if (q < id) g.edges.emplace_back(q, id);
    }
  }
  return g;
}

inline std::vector<SttObject> enumerate_stt(const Nakayama& a) {
  auto brute = enumerate_stt_bruteforce(a);
  auto graph = enumerate_stt_mutation(a).objects;
  std::sort(graph.begin(), graph.end());
  if (brute != graph) throw InvariantViolation("stt enumerations disagree");
  return brute;
}

enum class NullSign { NonnegativeOnly, NonpositiveOnly, Both };

inline const char* to_string(NullSign s) {
  switch (s) {
    case NullSign::NonnegativeOnly: return "nonnegative";
    case NullSign::NonpositiveOnly: return "nonpositive";
    default: return "both";
  }
}

inline NullSign null_sign(const Nakayama& a, const SttObject& t) {
  if (!is_support_tau_rigid(a, t)) throw std::invalid_argument("null_sign of a non-rigid object");
  if (!t.shifted.empty()) return NullSign::NonpositiveOnly;
  for (const auto& m : t.modules)
    if (a.is_projective(m)) return NullSign::NonnegativeOnly;
  return NullSign::Both;
}

// positive: no shifted summand; negative: no projective module summand
inline bool has_null_sign(const Nakayama& a, const SttObject& t, bool positive) {
  if (positive) return t.shifted.empty();
  for (const auto& m : t.modules)
    if (a.is_projective(m)) return false;
  return true;
}

inline bool contains_object(const SttObject& big, const SttObject& small) {
  for (const auto& m : small.modules)
    if (std::find(big.modules.begin(), big.modules.end(), m) == big.modules.end()) return false;
  for (auto i : small.shifted)
    if (std::find(big.shifted.begin(), big.shifted.end(), i) == big.shifted.end()) return false;
  return true;
}

inline SttObject complete_to_stt(const Nakayama& a, const SttObject& m, bool positive) {
  if (!is_support_tau_rigid(a, m)) throw std::invalid_argument("completion of a non-rigid object");
  std::optional<SttObject> best;
  std::size_t best_score = 0;
  for (const auto& t : enumerate_stt_bruteforce(a)) {
    if (!has_null_sign(a, t, positive) || !contains_object(t, m)) continue;
    std::size_t score = t.shifted.size();
    if (positive) {
      score = 0;
      for (const auto& x : t.modules) score += a.is_projective(x);
    }
    if (!best || score > best_score) {
      best = t;
      best_score = score;
    }
  }
  if (!best) throw InvariantViolation("no completion of the requested sign");
  return *best;
}

inline std::vector<RatVec> g_vectors(const Nakayama& a, const SttObject& t) {
  std::vector<RatVec> g;
  for (const auto& m : t.modules) g.push_back(a.g_vector(m));
  for (auto i : t.shifted) g.push_back(a.shifted_g_vector(i));
  return g;
}

inline Cone stt_cone(const Nakayama& a, const SttObject& t) {
  return Cone::from_generators(a.rank(), g_vectors(a, t));
}

// Fac A contained in Fac B: every summand of A equals its trace from B
inline bool fac_contained(const Nakayama& a, const std::vector<NakModule>& as,
                          const std::vector<NakModule>& bs) {
  std::vector<Rep> src;
  for (const auto& b : bs) src.push_back(a.rep(b));
  for (const auto& x : as) {
    Rep rx = a.rep(x);
    if (trace_subspace(src, rx).size() != rx.total()) return false;
  }
  return true;
}

struct ExchangeResult {
  NakModule brick;
  SttObject smaller;
  SttObject larger;
};

// brick labelling the common wall of two adjacent support tau-tilting objects: the cokernel of
// the right add M1-approximation of M2 where Fac M1 is strictly inside Fac M2
inline ExchangeResult exchange_brick(const Nakayama& a, const SttObject& t1, const SttObject& t2) {
  auto s1 = summands(t1), s2 = summands(t2);
  std::size_t common = 0;
  for (const auto& x : s1)
    if (std::find(s2.begin(), s2.end(), x) != s2.end()) ++common;
  if (t1.size() != a.rank() || t2.size() != a.rank() || common + 1 != a.rank())
    throw std::invalid_argument("not an exchange pair");
  bool forward = fac_contained(a, t1.modules, t2.modules);
  bool backward = fac_contained(a, t2.modules, t1.modules);
  if (forward == backward) throw InvariantViolation("torsion classes are not strictly nested");
  const SttObject& m1 = forward ? t1 : t2;
  const SttObject& m2 = forward ? t2 : t1;
  std::vector<NakModule> extra;
  for (const auto& x : m2.modules)
    if (std::find(m1.modules.begin(), m1.modules.end(), x) == m1.modules.end()) extra.push_back(x);
  if (extra.size() != 1) throw InvariantViolation("exchange pair without a unique new module");
  const NakModule& x = extra[0];
  std::vector<Rep> src;
  for (const auto& b : m1.modules) src.push_back(a.rep(b));
  Rep rx = a.rep(x);
  auto tr = trace_subspace(src, rx);
  std::size_t t = tr.size();
  if (t >= x.length) throw InvariantViolation("approximation is surjective");
  NakModule sub{x.socle, t};
  if (t > 0) {
    auto dims = graded_dims(rx, tr);
    RatVec dv = zeros(a.rank());
    for (std::size_t v = 0; v < dims.size(); ++v) dv[v] = static_cast<long>(dims[v]);
    if (dv != a.dim(sub)) throw InvariantViolation("trace is not the expected submodule");
  }
  NakModule y{wrap(static_cast<long>(x.socle + t), a.rank()), x.length - t};
  if (!a.is_brick(y)) throw InvariantViolation("cokernel is not a brick");
  return {y, m1, m2};
}

// first index i such that every left subsum of the cyclic window starting at i is nonpositive
inline std::size_t left_subsum_start(const RatVec& a) {
  if (a.empty() || sgn(sum(a)) != 0) throw std::invalid_argument("entries must sum to zero");
  Rational s = 0, best = 0;
  std::size_t arg = 0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    s += a[k - 1];
    if (s > best) {
      best = s;
      arg = k;
    }
  }
  return arg + 1;
}

}  // namespace wcs
