#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "wcs/srr.hpp"

using namespace wcs;

namespace {

struct Model {
  HereditaryModel m;
  TubeData td;
};

Model load(const char* text) {
  Model x{build_model(parse_quiver(text)), {}};
  x.td = tube_data(x.m);
  return x;
}

const char* kOneTube = "4; 1>2, 2>3, 3>4, 1>4";
const char* kTwoTube = "4; 1>2, 2>3, 4>3, 1>4";
const char* kA2 = "3; 2>1, 3>2, 3>1";

const std::vector<const char*> kModels{kOneTube, kTwoTube, kA2};

TubeModule find_module(const Model& x, const std::string& name) {
  for (const auto& b : tube_rigid_bricks(x.td))
    if (module_name(x.td, b) == name) return b;
  throw std::runtime_error("no module " + name);
}

ProjectiveVector find_pv(const Model& x, const std::string& name) {
  for (const auto& p : all_projective_vectors(x.m, x.td))
    if (projective_name(x.td, p) == name) return p;
  throw std::runtime_error("no projective vector " + name);
}

// support tau-rigid objects of Lambda_r by brute force over subsets of rigid summands
std::vector<SttObject> all_str(const Nakayama& a) {
  auto rs = rigid_summands(a);
  std::vector<SttObject> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << rs.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountl(mask)) > a.rank()) continue;
    std::vector<Summand> ss;
    for (std::size_t k = 0; k < rs.size(); ++k)
      if (mask >> k & 1) ss.push_back(rs[k]);
    SttObject t = from_summands(ss);
    if (is_support_tau_rigid(a, t)) out.push_back(t);
  }
  return out;
}

bool has_projective(const Nakayama& a, const SttObject& t) {
  for (const auto& z : t.modules)
    if (a.is_projective(z)) return true;
  return false;
}

// all tuples of null-signed support tau-rigid objects, one per tube
std::vector<std::vector<SttObject>> signed_tuples(const Model& x, bool positive) {
  std::vector<std::vector<SttObject>> out{{}};
  for (std::size_t i = 0; i < x.td.count(); ++i) {
    Nakayama a(x.td.tubes[i].rank());
    std::vector<std::vector<SttObject>> next;
    for (const auto& t : all_str(a)) {
      if (!has_null_sign(a, t, positive)) continue;
      for (auto v : out) {
        v.push_back(t);
        next.push_back(v);
      }
    }
    out = next;
  }
  return out;
}

bool composition_hypothesis(const Model& x, const std::vector<SttObject>& tuple, bool positive) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    Nakayama a(x.td.tubes[i].rank());
    c += positive ? has_projective(a, tuple[i]) : !tuple[i].shifted.empty();
  }
  return c == 0 || c == tuple.size();
}

// maximal elements under containment
std::vector<SrrTriple> maximal(const std::vector<SrrTriple>& all) {
  std::vector<SrrTriple> out;
  for (const auto& t : all) {
    bool top = true;
    for (const auto& u : all)
      if (!(u == t) && contains_triple(u, t)) {
        top = false;
        break;
      }
    if (top) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("support regular rigid conditions") {
  auto x = load(kTwoTube);
  CHECK(is_srr(x.m, x.td, {}).ok);
  SrrTriple t{{find_module(x, "2")}, {find_pv(x, "p(123,2)")}, {}};
  auto c = is_srr(x.m, x.td, t);
  INFO(c.reason);
  CHECK(c.ok);
  SrrTriple both{{}, {find_pv(x, "p(123,2)")}, {find_pv(x, "p(4,134)")}};
  CHECK_FALSE(is_srr(x.m, x.td, both).ok);
  SrrTriple full{{{0, 1, 2}}, {}, {}};
  CHECK_FALSE(is_srr(x.m, x.td, full).ok);
  // dim tau(2) = 134 pairs to one with p(4,134)
  SrrTriple bad{{find_module(x, "2")}, {find_pv(x, "p(4,134)")}, {}};
  CHECK_FALSE(is_srr(x.m, x.td, bad).ok);
  SrrTriple bad_minus{{find_module(x, "2")}, {}, {find_pv(x, "p(4,2)")}};
  CHECK_FALSE(is_srr(x.m, x.td, bad_minus).ok);
  CHECK_THROWS(is_srr(x.m, x.td, SrrTriple{{{5, 1, 1}}, {}, {}}));
  auto one = load(kOneTube);
  SrrTriple pair{{find_module(one, "3"), find_module(one, "2")}, {}, {}};
  CHECK_FALSE(is_srr(one.m, one.td, pair).ok);
}

TEST_CASE("projective closure") {
  auto x = load(kTwoTube);
  SrrTriple p1{{}, {projective_vector(x.m, x.td, {1, 1}), projective_vector(x.m, x.td, {2, 2})}, {}};
  SrrTriple p2{{}, {projective_vector(x.m, x.td, {1, 2}), projective_vector(x.m, x.td, {2, 1})}, {}};
  p1.normalize();
  p2.normalize();
  auto all = all_projective_vectors(x.m, x.td);
  std::sort(all.begin(), all.end());
  CHECK(tp(p1.plus) == tp(p2.plus));
  CHECK(tp(p1.plus).size() == 4);
  CHECK(projective_closure(x.m, x.td, p1).plus == all);
  CHECK(projective_closure(x.m, x.td, p2).plus == all);
  CHECK_FALSE(is_projectively_closed(x.m, x.td, p1));
  for (const char* q : kModels) {
    auto y = load(q);
    for (const auto& t : enumerate_srr(y.m, y.td, false)) {
      auto c = projective_closure(y.m, y.td, t);
      CHECK(is_srr(y.m, y.td, c).ok);
      CHECK(is_projectively_closed(y.m, y.td, c));
      CHECK(projective_closure(y.m, y.td, c) == c);
      CHECK(contains_triple(c, t));
      CHECK(t.plus.empty() == c.plus.empty());
      CHECK(t.minus.empty() == c.minus.empty());
      if (is_projectively_closed(y.m, y.td, t)) CHECK(c == t);
    }
  }
  CHECK_THROWS(projective_closure(x.m, x.td, SrrTriple{{{0, 1, 2}}, {}, {}}));
}

TEST_CASE("rho and iota") {
  auto x = load(kTwoTube);
  SrrTriple t{{find_module(x, "2")}, {find_pv(x, "p(123,2)")}, {}};
  auto r0 = rho(x.m, x.td, t, 0), r1 = rho(x.m, x.td, t, 1);
  CHECK(r0.modules == std::vector<NakModule>{{2, 3}});
  CHECK(r1.modules == std::vector<NakModule>{{1, 1}, {1, 3}});
  CHECK(rho(x.m, x.td, {}, 0).size() == 0);
  CHECK_THROWS(rho(x.m, x.td, t, 2));
  auto e = iota(x.m, x.td, {SttObject{}, SttObject{}}, true);
  CHECK(e == SrrTriple{});
  CHECK(iota(x.m, x.td, {SttObject{}, SttObject{}}, false) == SrrTriple{});
  CHECK_THROWS(iota(x.m, x.td, {SttObject{{}, {1}}, SttObject{}}, true));
  CHECK_THROWS(iota(x.m, x.td, {SttObject{{{1, 3}}, {}}, SttObject{}}, false));
  for (const char* q : kModels) {
    auto y = load(q);
    INFO(q);
    for (bool positive : {true, false})
      for (const auto& tuple : signed_tuples(y, positive)) {
        auto s = iota(y.m, y.td, tuple, positive);
        CHECK(is_srr(y.m, y.td, s).ok);
        CHECK(is_projectively_closed(y.m, y.td, s));
        if (composition_hypothesis(y, tuple, positive)) CHECK(rho_all(y.m, y.td, s) == tuple);
      }
    for (const auto& t : enumerate_srr(y.m, y.td, false)) {
      auto c = projective_closure(y.m, y.td, t);
      if (t.minus.empty()) CHECK(iota(y.m, y.td, rho_all(y.m, y.td, t), true) == c);
      if (t.plus.empty()) CHECK(iota(y.m, y.td, rho_all(y.m, y.td, t), false) == c);
    }
  }
}

TEST_CASE("containment across rho and iota") {
  for (const char* q : kModels) {
    auto y = load(q);
    INFO(q);
    auto triples = enumerate_srr(y.m, y.td, false);
    for (bool positive : {true, false}) {
      auto tuples = signed_tuples(y, positive);
      for (const auto& t : triples) {
        if (!(positive ? t.minus.empty() : t.plus.empty())) continue;
        auto rs = rho_all(y.m, y.td, t);
        for (const auto& tuple : tuples) {
          auto s = iota(y.m, y.td, tuple, positive);
          bool inside = true;
          for (std::size_t i = 0; i < tuple.size(); ++i) inside = inside && contains_object(tuple[i], rs[i]);
          CHECK(contains_triple(s, t) == inside);
          if (contains_triple(t, s) && composition_hypothesis(y, tuple, positive))
            for (std::size_t i = 0; i < tuple.size(); ++i) CHECK(contains_object(rs[i], tuple[i]));
        }
      }
    }
  }
}

TEST_CASE("clusters are the maximal support regular rigid triples") {
  std::map<std::string, std::size_t> expected{{kOneTube, 20}, {kTwoTube, 18}, {kA2, 6}};
  for (const char* q : kModels) {
    auto y = load(q);
    INFO(q);
    auto cl = enumerate_clusters(y.m, y.td);
    CHECK(cl.size() == expected[q]);
    auto all = enumerate_srr(y.m, y.td, false);
    auto top = maximal(all);
    CHECK(std::set<SrrTriple>(top.begin(), top.end()) == std::set<SrrTriple>(cl.begin(), cl.end()));
    for (const auto& t : all) {
      bool covered = false;
      for (const auto& c : cl) covered = covered || contains_triple(c, t);
      CHECK(covered);
      CHECK(is_cluster(y.m, y.td, t) == (std::find(cl.begin(), cl.end(), t) != cl.end()));
      if (!is_projectively_closed(y.m, y.td, t)) CHECK_FALSE(is_cluster(y.m, y.td, t));
    }
  }
  auto one = load(kOneTube);
  CHECK(enumerate_clusters(one.m, one.td).size() == enumerate_stt(Nakayama(3)).size());
  std::set<SrrTriple> images;
  for (const auto& t : enumerate_stt(Nakayama(3)))
    if (t.shifted.empty()) images.insert(iota(one.m, one.td, {t}, true));
  std::size_t positive = 0;
  for (const auto& t : enumerate_stt(Nakayama(3))) positive += t.shifted.empty();
  CHECK(images.size() == positive);
}

TEST_CASE("cones of support regular rigid triples") {
  auto x = load(kTwoTube);
  CHECK(cone_of(x.m, x.td, {}).cone == Cone::zero(4));
  SrrTriple four{{}, all_projective_vectors(x.m, x.td), {}};
  four.normalize();
  auto c = cone_of(x.m, x.td, four).cone;
  CHECK(c.dim() == 3);
  CHECK(c.rays().size() == 4);
  CHECK(is_cluster(x.m, x.td, four));
  for (const char* q : kModels) {
    auto y = load(q);
    for (const auto& t : enumerate_srr(y.m, y.td, true)) {
      auto s = cone_of(y.m, y.td, t);
      CHECK(s.cone.dim() == predicted_cone_dim(y.m, y.td, t));
      for (const auto& g : s.cone.generators()) CHECK(sgn(dot(g, y.m.g_eta)) == 0);
    }
  }
}

TEST_CASE("relative interior is the positive coefficient locus") {
  std::mt19937_64 g(11);
  for (const char* q : kModels) {
    auto y = load(q);
    for (const auto& t : enumerate_clusters(y.m, y.td)) {
      Cone c = cone_of(y.m, y.td, t).cone;
      auto gens = cone_generators(y.m, y.td, t);
      for (int s = 0; s < 10; ++s) {
        RatVec v = zeros(y.m.n());
        for (const auto& gv : gens) v = v + oracle::random_rational(g, 1, 3) * gv;
        CHECK(c.in_relative_interior(v));
        if (!t.modules.empty()) {
          RatVec w = zeros(y.m.n());
          for (std::size_t k = 1; k < gens.size(); ++k) w = w + oracle::random_rational(g, 1, 3) * gens[k];
          CHECK(c.contains(w));
          CHECK_FALSE(c.in_relative_interior(w));
        }
      }
    }
  }
}

TEST_CASE("transportation solution reproduces cone points") {
  std::mt19937_64 g(21);
  for (const char* q : {kTwoTube, kOneTube}) {
    auto y = load(q);
    for (const auto& t : enumerate_srr(y.m, y.td, true)) {
      const auto& ps = t.plus.empty() ? t.minus : t.plus;
      if (ps.empty()) continue;
      for (int s = 0; s < 5; ++s) {
        std::vector<Rational> lam;
        RatVec v = zeros(y.m.n());
        std::map<QuasiSimple, Rational> sums;
        for (const auto& p : ps) {
          lam.push_back(oracle::random_rational(g, 0, 3));
          v = v + lam.back() * p.vec;
          for (std::size_t i = 0; i < p.choice.size(); ++i) sums[{i, p.choice[i]}] += lam.back();
        }
        for (const auto& [qs, val] : sums) CHECK(dot(v, tube_module_dim(y.td, {qs.first, qs.second, 1})) == val);
        auto sol = transportation_solution(ps, sums, y.td.count());
        RatVec w = zeros(y.m.n());
        for (std::size_t k = 0; k < ps.size(); ++k) {
          CHECK(sol[k] >= 0);
          w = w + sol[k] * ps[k].vec;
        }
        CHECK(w == v);
      }
    }
  }
}

TEST_CASE("projectively closed cones form a fan") {
  for (const char* q : kModels) {
    auto y = load(q);
    auto f = build_srr_fan(y.m, y.td);
    INFO(q);
    for (const auto& v : f.report.violations) INFO(v);
    CHECK(f.report.ok);
    CHECK(f.dims_match);
    CHECK(f.injective);
  }
  auto x = load(kTwoTube);
  Cone two = Cone::from_generators(4, {find_pv(x, "p(123,2)").vec, find_pv(x, "p(4,134)").vec});
  SrrTriple four{{}, all_projective_vectors(x.m, x.td), {}};
  four.normalize();
  Cone big = cone_of(x.m, x.td, four).cone;
  CHECK(big.contains(two));
  CHECK_FALSE(is_face(two, big));
  auto f = build_srr_fan(x.m, x.td);
  bool listed = false;
  for (const auto& c : f.cones) listed = listed || c.cone == two;
  CHECK_FALSE(listed);
  for (const auto& w : regular_walls(x.m, x.td)) CHECK_FALSE(w.cone.contains(two));
}

TEST_CASE("clusters correspond to regular chambers") {
  std::map<std::string, std::size_t> expected{{kOneTube, 20}, {kTwoTube, 18}, {kA2, 6}};
  for (const char* q : kModels) {
    auto y = load(q);
    auto b = verify_chamber_bijection(y.m, y.td);
    INFO(q);
    for (const auto& f : b.failures) INFO(f);
    CHECK(b.ok);
    CHECK(b.clusters == expected[q]);
    CHECK(b.chambers == expected[q]);
  }
}

TEST_CASE("no brick is semistable inside a cluster chamber") {
  std::mt19937_64 g(31);
  for (const char* q : kModels) {
    auto y = load(q);
    for (const auto& t : enumerate_clusters(y.m, y.td)) {
      auto gens = cone_generators(y.m, y.td, t);
      for (int s = 0; s < 5; ++s) {
        RatVec v = zeros(y.m.n());
        for (const auto& gv : gens) v = v + oracle::random_rational(g, 1, 3) * gv;
        for (const auto& b : tube_bricks(y.td)) {
          CHECK_FALSE(vperp_membership(y.m, y.td, v, b));
          CHECK_FALSE(regular_domain(y.m, y.td, b).contains(v));
        }
        CHECK_FALSE(d_reg_eta(y.m).contains(v));
      }
    }
  }
}

TEST_CASE("wall labels of clusters") {
  for (const char* q : kModels) {
    auto y = load(q);
    INFO(q);
    std::size_t n = y.m.n();
    for (const auto& t : enumerate_clusters(y.m, y.td)) {
      auto ws = wall_labels(y.m, y.td, t);
      Cone c = cone_of(y.m, y.td, t).cone;
      std::set<Cone> facets;
      for (const auto& f : faces(c))
        if (f.dim() + 1 == c.dim()) facets.insert(f);
      std::set<Cone> labeled;
      std::set<std::pair<bool, TubeModule>> labels;
      std::size_t eta = 0;
      for (const auto& w : ws) {
        labeled.insert(w.face);
        CHECK(w.face.dim() + 2 == n);
        if (w.eta) {
          ++eta;
          CHECK(d_reg_eta(y.m).contains(w.face));
          Cone meet = Cone::whole(n);
          bool rank_two = true;
          for (const auto& b : w.covering) {
            meet = cone_intersect(meet, regular_domain(y.m, y.td, b));
            rank_two = rank_two && y.td.tubes[b.tube].rank() == 2;
          }
          CHECK(meet.contains(w.face));
          // in rank 3 the intersection is the union of two chamber faces
          if (rank_two) CHECK(meet == w.face);
          if (!rank_two) CHECK(meet.dim() == w.face.dim());
          labels.insert({true, {}});
        } else {
          CHECK(regular_domain(y.m, y.td, w.brick).contains(w.face));
          labels.insert({false, w.brick});
        }
      }
      CHECK(labeled == facets);
      CHECK(labels.size() == ws.size());
      if (t.projective_count() == 1) {
        CHECK(ws.size() == n - 1);
        CHECK(eta == 1);
      } else {
        const auto& ps = t.plus.empty() ? t.minus : t.plus;
        auto tops = tp(ps);
        std::size_t total = 0, singles = 0;
        for (const auto& r : rho_all(y.m, y.td, t)) total += r.size();
        for (std::size_t i = 0; i < y.td.count(); ++i) {
          std::size_t k = 0;
          for (const auto& qs : tops) k += qs.first == i;
          singles += k == 1;
        }
        CHECK(ws.size() == total - singles);
        CHECK(eta == 0);
      }
    }
  }
  auto x = load(kTwoTube);
  CHECK_THROWS(wall_labels(x.m, x.td, SrrTriple{}));
}

TEST_CASE("the chamber with walls 3, 23 and the null wall piece 2341") {
  auto y = load(kOneTube);
  std::size_t found = 0;
  for (const auto& t : enumerate_clusters(y.m, y.td)) {
    std::set<std::string> names;
    for (const auto& w : wall_labels(y.m, y.td, t)) {
      if (!w.eta) {
        names.insert(module_name(y.td, w.brick));
        continue;
      }
      REQUIRE(w.covering.size() == 1);
      // the quasi-socle of the string module 2-3-4-1 is the submodule 4-1
      names.insert("eta/" + module_name(y.td, {0, w.covering[0].socle, 1}));
    }
    if (names == std::set<std::string>{"3", "23", "eta/14"}) {
      ++found;
      CHECK(t.modules.size() == 2);
    }
  }
  CHECK(found == 1);
}

TEST_CASE("imaginary clusters") {
  std::map<std::string, std::size_t> imag;
  for (const char* q : kModels) {
    auto y = load(q);
    for (const auto& t : enumerate_clusters(y.m, y.td)) {
      CHECK(is_imaginary_by_count(t) == is_imaginary_by_null_wall(y.m, y.td, t));
      imag[q] += is_imaginary_cluster(y.m, y.td, t);
      CHECK(t.projective_count() >= 1);
    }
  }
  CHECK_FALSE(is_imaginary_by_count(SrrTriple{}));
  CHECK(imag[kA2] == 4);
  CHECK(imag[kOneTube] == 12);
  CHECK(imag[kTwoTube] == 8);
}
