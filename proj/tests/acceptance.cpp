#include <chrono>
#include <functional>
#include <iostream>

#include "suites.hpp"

using namespace wcs;
using suites::kA2;
using suites::kOneTube;
using suites::kTwoTubes;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  double limit_s;
  std::function<Outcome()> run;
};

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

PictureState start(const char* q) {
  auto m = build_model(parse_quiver(q));
  return initial_picture(m, tube_data(m));
}

ProjectiveVector find_pv(const suites::Model& x, const std::string& name) {
  for (const auto& p : all_projective_vectors(x.m, x.td))
    if (projective_name(x.td, p) == name) return p;
  throw std::runtime_error("no projective vector " + name);
}

Outcome indecomposable_counts() {
  Outcome o;
  for (std::size_t r = 1; r <= 6; ++r) {
    std::size_t got = Nakayama(r).indecomposables().size();
    o.pass = o.pass && got == r * (r + 1);
    o.detail += (r > 1 ? " " : "") + std::to_string(got);
  }
  return o;
}

Outcome projective_vectors() {
  auto x = suites::load(kTwoTubes);
  std::set<RatVec> got, want{{rat(-1, 2), rat(1), rat(-1, 2), rat(1)},
                             ints({0, 1, 0, 0}),
                             ints({0, 0, 0, 1}),
                             {rat(1, 2), rat(0), rat(1, 2), rat(0)}};
  auto ps = all_projective_vectors(x.m, x.td);
  for (const auto& p : ps) got.insert(p.vec);
  Outcome o;
  o.pass = ps.size() == 4 && got == want && x.m.eta == ints({1, 1, 1, 1}) && x.m.g_eta == ints({1, 0, -1, 0});
  o.detail = "eta=" + to_string(x.m.eta) + " g=" + to_string(x.m.g_eta);
  for (const auto& v : got) o.detail += " " + to_string(v);
  return o;
}

Outcome a2_picture() {
  auto x = suites::load(kA2);
  auto s = regular_structure(x.m, x.td);
  Outcome o;
  o.pass = s.report.verified && s.sphere_wall_count() == 6 && s.chambers.size() == 6;
  o.detail = "walls=" + std::to_string(s.sphere_wall_count()) + " chambers=" + std::to_string(s.chambers.size());
  return o;
}

Outcome thm_b(const char* q) {
  auto x = suites::load(q);
  auto r = verify_thm_b(x.m, x.td);
  Outcome o;
  o.pass = r.ok && r.walls_match && r.chambers_match && r.product_chambers == r.regular_chambers;
  o.detail = std::string(q) + ": chambers " + std::to_string(r.product_chambers) + "/" +
             std::to_string(r.regular_chambers);
  for (const auto& f : r.failures) o.detail += "; " + f;
  return o;
}

Outcome thm_a() {
  auto r = verify_thm_a(2, 4, 200, 42);
  Outcome o;
  o.pass = r.ok && r.bricks == 4 + 9 + 16 && r.samples == r.bricks * 200;
  o.detail = "bricks=" + std::to_string(r.bricks) + " samples=" + std::to_string(r.samples) +
             " members=" + std::to_string(r.members) + " disagreements=" + std::to_string(r.disagreements.size());
  return o;
}

Outcome fan_axioms() {
  Outcome o;
  for (const char* q : {kOneTube, kTwoTubes}) {
    auto x = suites::load(q);
    auto f = build_srr_fan(x.m, x.td);
    o.pass = o.pass && f.report.ok && f.dims_match && f.injective;
    o.detail += std::to_string(f.cones.size()) + " cones, ";
  }
  auto x = suites::load(kTwoTubes);
  Cone two = Cone::from_generators(4, {find_pv(x, "p(123,2)").vec, find_pv(x, "p(4,134)").vec});
  SrrTriple all{{}, all_projective_vectors(x.m, x.td), {}};
  all.normalize();
  Cone big = cone_of(x.m, x.td, all).cone;
  bool listed = false;
  for (const auto& c : build_srr_fan(x.m, x.td).cones) listed = listed || c.cone == two;
  bool witness = big.contains(two) && !is_face(two, big) && !listed;
  o.pass = o.pass && witness;
  o.detail += std::string("non-face witness ") + (witness ? "holds" : "fails");
  return o;
}

Outcome chamber_bijection() {
  Outcome o;
  for (const char* q : {kOneTube, kTwoTubes, kA2}) {
    auto x = suites::load(q);
    auto b = verify_chamber_bijection(x.m, x.td);
    o.pass = o.pass && b.ok && b.clusters == b.chambers;
    o.detail += std::to_string(b.clusters) + "/" + std::to_string(b.chambers) + " ";
  }
  return o;
}

Outcome wall_label_structure() {
  Outcome o;
  std::size_t checked = 0;
  for (const char* q : {kOneTube, kTwoTubes, kA2}) {
    auto x = suites::load(q);
    std::size_t n = x.m.n();
    for (const auto& t : enumerate_clusters(x.m, x.td)) {
      if (t.projective_count() != 1) continue;
      ++checked;
      auto ws = wall_labels(x.m, x.td, t);
      std::set<std::pair<bool, TubeModule>> labels;
      std::size_t eta = 0;
      for (const auto& w : ws) {
        labels.insert({w.eta, w.eta ? TubeModule{} : w.brick});
        if (w.eta) {
          ++eta;
          o.pass = o.pass && d_reg_eta(x.m).contains(w.face);
        }
      }
      o.pass = o.pass && ws.size() == n - 1 && labels.size() == ws.size() && eta == 1;
    }
  }
  o.pass = o.pass && checked > 0;
  o.detail = std::to_string(checked) + " clusters";
  return o;
}

Outcome mutation_figures() {
  Outcome o;
  auto gs = suites::golden_pictures(std::string(WCS_GOLDEN_DIR) + "/mutation_labels.txt");
  for (const auto& gp : gs) {
    auto s = suites::run_steps(start(gp.quiver.c_str()), gp.steps);
    bool ok = non_null_labels(s) == suites::golden_labels(gp, s.n()) && s.eta == suites::word(gp.eta, s.n());
    if (!gp.result.empty()) ok = ok && s.b == exchange_matrix(parse_quiver(gp.result));
    o.pass = o.pass && ok;
    o.detail += gp.name + (ok ? " ok, " : " FAILED, ");
  }
  o.pass = o.pass && gs.size() == 3;
  std::size_t pairs = 0;
  for (const char* q : {kOneTube, kTwoTubes, kA2}) {
    auto s = start(q);
    auto c0 = verify_wall_chamber(s.walls, s.space(), false).chambers;
    std::set<Cone> before(c0.begin(), c0.end());
    for (std::size_t k = 1; k <= s.n(); ++k) {
      auto t = mutate_picture(mutate_picture(s, k), k);
      auto c1 = verify_wall_chamber(t.walls, t.space(), false).chambers;
      std::set<Cone> after(c1.begin(), c1.end());
      o.pass = o.pass && same_picture(s, t) && before == after;
      ++pairs;
    }
  }
  o.detail += "double mutation " + std::to_string(pairs) + " cases";
  return o;
}

// labelled 4-cycles 1-a-b-c-1 with every acyclic orientation
std::vector<Quiver> acyclic_a3_orientations() {
  std::vector<Quiver> out;
  for (const auto& cyc : std::vector<std::array<std::size_t, 4>>{{1, 2, 3, 4}, {1, 3, 2, 4}, {1, 2, 4, 3}})
    for (unsigned mask = 0; mask < 16; ++mask) {
      Quiver q;
      q.n = 4;
      for (std::size_t e = 0; e < 4; ++e) {
        std::size_t a = cyc[e], b = cyc[(e + 1) % 4];
        q.arrows.push_back(mask >> e & 1 ? std::pair{a, b} : std::pair{b, a});
      }
      std::sort(q.arrows.begin(), q.arrows.end());
      if (is_acyclic(q)) out.push_back(q);
    }
  return out;
}

Outcome null_transport() {
  Outcome o;
  IntMatrix target = exchange_matrix(parse_quiver("4; 1>3, 3>4, 4>1, 1>2, 2>3"));
  auto goal = [&](const IntMatrix& b, const NullData& nd) {
    return b == target && nd.eta == ints({1, 1, 1, 0}) && nd.g_eta == ints({1, 0, -1, 0});
  };
  auto starts = acyclic_a3_orientations();
  std::size_t found = 0, best = 99, fixed = 0;
  for (const auto& q : starts) {
    auto m = build_model(q);
    PictureState s;
    s.b = exchange_matrix(q);
    s.eta = m.eta;
    s.g_eta = m.g_eta;
    if (auto r = find_mutation_sequence(s, goal, 3)) {
      ++found;
      best = std::min(best, r->sequence.size());
    }
    auto td = tube_data(m);
    for (std::size_t k = 1; k <= 4; ++k) {
      bool regular_simple = false;
      for (std::size_t i = 0; i < td.count(); ++i)
        for (std::size_t j = 1; j <= td.tubes[i].rank(); ++j)
          regular_simple = regular_simple || tube_module_dim(td, {i, j, 1}) == unit(4, k - 1);
      if (!regular_simple) continue;
      ++fixed;
      o.pass = o.pass && transport_null(s, k).g_eta == s.g_eta;
    }
  }
  o.pass = o.pass && found > 0 && best == 1 && fixed > 0;
  o.detail = std::to_string(starts.size()) + " starts, " + std::to_string(found) + " reach the target, shortest " +
             std::to_string(best) + ", " + std::to_string(fixed) + " regular simple mutations fix g";
  return o;
}

Outcome dual_enumeration() {
  Outcome o;
  for (std::size_t r = 1; r <= 5; ++r) {
    Nakayama a(r);
    auto brute = enumerate_stt_bruteforce(a);
    auto graph = enumerate_stt_mutation(a).objects;
    std::sort(brute.begin(), brute.end());
    std::sort(graph.begin(), graph.end());
    o.pass = o.pass && brute == graph && !brute.empty();
    o.detail += (r > 1 ? " " : "") + std::to_string(brute.size());
  }
  return o;
}

Outcome property_suites() {
  constexpr std::size_t kSamples = 1000;
  std::vector<std::pair<std::string, suites::SuiteResult>> rs{
      {"cones", suites::cone_round_trips(101, kSamples)},
      {"chambers", suites::chamber_convexity(202, kSamples)},
      {"rho-iota", suites::rho_iota_identities(303, kSamples)},
      {"transportation", suites::transportation_representability(404, kSamples)}};
  Outcome o;
  for (const auto& [name, r] : rs) {
    o.pass = o.pass && r.ok() && r.samples == kSamples;
    o.detail += name + " " + std::to_string(r.violations) + "/" + std::to_string(r.samples) + " ";
  }
  return o;
}

}  // namespace

int main() {
  std::vector<Criterion> cs{
      {1, 1, indecomposable_counts},
      {2, 0, projective_vectors},
      {3, 1, a2_picture},
      {4, 10, [] { return thm_b(kOneTube); }},
      {4, 10, [] { return thm_b(kTwoTubes); }},
      {4, 10, [] { return thm_b(kA2); }},
      {5, 30, thm_a},
      {6, 60, fan_axioms},
      {7, 60, chamber_bijection},
      {8, 0, wall_label_structure},
      {9, 30, mutation_figures},
      {10, 0, null_transport},
      {11, 0, dual_enumeration},
      {12, 0, property_suites},
  };
  std::map<int, bool> verdict;
  std::map<int, std::string> lines;
  for (const auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit_s == 0 || secs < c.limit_s;
    std::string limit = c.limit_s == 0 ? "" : " < " + fmt_seconds(c.limit_s);
    verdict.try_emplace(c.id, true);
    verdict[c.id] = verdict[c.id] && o.pass && in_time;
    lines[c.id] += (lines[c.id].empty() ? "" : " | ") + o.detail + " [" + fmt_seconds(secs) + limit + "]";
  }
  bool all = true;
  for (const auto& [id, ok] : verdict) {
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " (exact) " << lines[id] << "\n";
    all = all && ok;
  }
  return all ? 0 : 1;
}
