#pragma once

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "wcs/mutapp.hpp"
#include "wcs/srr.hpp"

namespace wcs {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct WallRecord {
  RatVec label;
  std::string module_id;
  bool null = false;
  std::vector<RatVec> equations;
  std::vector<RatVec> inequalities;
  std::vector<RatVec> generators;
  bool operator==(const WallRecord&) const = default;
};

struct ChamberRecord {
  std::vector<RatVec> generators;
  std::string cluster;
  std::vector<std::string> corners;
  bool operator==(const ChamberRecord&) const = default;
};

struct PictureDocument {
  std::string kind;
  std::string quiver;
  std::size_t n = 0;
  RatVec eta;
  RatVec g_eta;
  std::vector<MutationStep> history;
  std::vector<WallRecord> walls;
  std::vector<ChamberRecord> chambers;
  std::map<std::string, bool> verification;

  bool verified() const {
    for (const auto& [k, v] : verification)
      if (!v) return false;
    return true;
  }
  // dimension of the ambient space the picture lives in
  std::size_t space_dim() const { return g_eta.empty() ? n : n - 1; }
  Subspace space() const { return g_eta.empty() ? Subspace::whole(n) : Subspace(n, {g_eta}); }
  bool operator==(const PictureDocument&) const = default;
};

namespace detail {

inline std::vector<RatVec> sorted_vecs(std::vector<RatVec> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline WallRecord wall_record(const LabeledCone& w, bool null) {
  return {w.label, w.module_id, null, w.cone.equations(), w.cone.inequalities(), sorted_vecs(w.cone.generators())};
}

inline ChamberRecord chamber_record(const Cone& c, std::string cluster, std::vector<std::string> corners) {
  return {sorted_vecs(c.generators()), std::move(cluster), std::move(corners)};
}

inline void sort_document(PictureDocument& d) {
  std::sort(d.walls.begin(), d.walls.end(), [](const WallRecord& a, const WallRecord& b) {
    return std::tie(a.label, a.module_id, a.generators) < std::tie(b.label, b.module_id, b.generators);
  });
  std::sort(d.chambers.begin(), d.chambers.end(), [](const ChamberRecord& a, const ChamberRecord& b) {
    return std::tie(a.generators, a.cluster) < std::tie(b.generators, b.cluster);
  });
}

inline std::string stt_name(const SttObject& t) {
  std::string s;
  for (const auto& y : t.modules) s += (s.empty() ? "" : " ") + to_string(y);
  for (auto j : t.shifted) s += (s.empty() ? "" : " ") + ("P" + std::to_string(j) + "[1]");
  return s;
}

}  // namespace detail

inline PictureDocument nakayama_document(std::size_t r) {
  if (r < 1 || r > 6) throw std::out_of_range("Nakayama rank must be between 1 and 6");
  Nakayama a(r);
  Factor f = nakayama_factor(r);
  PictureDocument d;
  d.kind = "nakayama";
  d.n = r;
  for (const auto& w : f.cones) d.walls.push_back(detail::wall_record(w, false));
  auto ws = verify_wall_chamber(f.cones, r);
  std::set<Cone> chambers(ws.chambers.begin(), ws.chambers.end()), cones;
  for (const auto& t : enumerate_stt(a)) {
    Cone c = stt_cone(a, t);
    cones.insert(c);
    std::vector<std::string> corners;
    for (const auto& y : t.modules) corners.push_back(to_string(y));
    for (auto j : t.shifted) corners.push_back("P" + std::to_string(j) + "[1]");
    d.chambers.push_back(detail::chamber_record(c, detail::stt_name(t), corners));
  }
  d.verification["wall_chamber"] = ws.report.verified;
  d.verification["chambers_are_stt_cones"] = chambers == cones;
  detail::sort_document(d);
  return d;
}

inline PictureDocument picture_document(const PictureState& s, const std::string& quiver) {
  PictureDocument d;
  d.kind = "mutate";
  d.quiver = quiver;
  d.n = s.n();
  d.eta = s.eta;
  d.g_eta = s.g_eta;
  d.history = s.history;
  for (const auto& w : s.walls) d.walls.push_back(detail::wall_record(w, s.is_null_label(w.label)));
  auto ws = verify_wall_chamber(s.walls, s.space(), false);
  for (const auto& c : ws.chambers) d.chambers.push_back(detail::chamber_record(c, "", {}));
  d.verification["wall_chamber"] = ws.report.verified;
  detail::sort_document(d);
  return d;
}

inline PictureDocument regular_document(const HereditaryModel& m, const TubeData& td, const std::string& quiver) {
  PictureState s = initial_picture(m, td);
  PictureDocument d = picture_document(s, quiver);
  d.kind = "regular";
  d.chambers.clear();
  auto bij = verify_chamber_bijection(m, td);
  for (const auto& t : enumerate_clusters(m, td)) {
    std::vector<std::string> corners;
    for (const auto& x : t.modules) corners.push_back("g0(" + module_name(td, x) + ")");
    for (const auto& p : t.plus) corners.push_back("+" + projective_name(td, p));
    for (const auto& p : t.minus) corners.push_back("-" + projective_name(td, p));
    d.chambers.push_back(detail::chamber_record(cone_of(m, td, t).cone, to_string(td, t), corners));
  }
  d.verification["cluster_chamber_bijection"] = bij.ok;
  detail::sort_document(d);
  return d;
}

// exact rationals are written as strings "p/q", with q = 1 for integers
inline nlohmann::json to_json(const Rational& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

inline Rational rational_from_json(const nlohmann::json& j) {
  if (!j.is_string()) throw std::invalid_argument("rational must be a string");
  Rational x;
  if (x.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad rational " + j.get<std::string>());
  x.canonicalize();
  return x;
}

inline nlohmann::json to_json(const RatVec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline nlohmann::json to_json(const std::vector<RatVec>& vs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline RatVec vec_from_json(const nlohmann::json& j) {
  RatVec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline std::vector<RatVec> vecs_from_json(const nlohmann::json& j) {
  std::vector<RatVec> out;
  for (const auto& v : j) out.push_back(vec_from_json(v));
  return out;
}

inline nlohmann::ordered_json to_json(const PictureDocument& d) {
  nlohmann::ordered_json j;
  j["meta"]["schema_version"] = kSchemaVersion;
  j["meta"]["tool_version"] = kToolVersion;
  j["meta"]["kind"] = d.kind;
  j["meta"]["quiver"] = d.quiver;
  j["meta"]["n"] = d.n;
  j["meta"]["eta"] = to_json(d.eta);
  j["meta"]["g_eta"] = to_json(d.g_eta);
  j["meta"]["history"] = nlohmann::ordered_json::array();
  for (const auto& h : d.history) j["meta"]["history"].push_back({{"vertex", h.vertex}, {"sign", h.sign}});
  j["walls"] = nlohmann::ordered_json::array();
  for (const auto& w : d.walls) {
    nlohmann::ordered_json o;
    o["label"] = to_json(w.label);
    o["module_id"] = w.module_id;
    o["null"] = w.null;
    o["equations"] = to_json(w.equations);
    o["inequalities"] = to_json(w.inequalities);
    o["generators"] = to_json(w.generators);
    j["walls"].push_back(o);
  }
  j["chambers"] = nlohmann::ordered_json::array();
  for (const auto& c : d.chambers) {
    nlohmann::ordered_json o;
    o["generators"] = to_json(c.generators);
    o["cluster"] = c.cluster;
    o["corners"] = c.corners;
    j["chambers"].push_back(o);
  }
  j["verification"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : d.verification) j["verification"][k] = v;
  j["verification"]["verified"] = d.verified();
  return j;
}

inline PictureDocument document_from_json(const nlohmann::json& j) {
  const auto& meta = j.at("meta");
  if (meta.at("schema_version").get<int>() != kSchemaVersion) throw std::invalid_argument("unsupported schema version");
  PictureDocument d;
  d.kind = meta.at("kind").get<std::string>();
  d.quiver = meta.at("quiver").get<std::string>();
  d.n = meta.at("n").get<std::size_t>();
  d.eta = vec_from_json(meta.at("eta"));
  d.g_eta = vec_from_json(meta.at("g_eta"));
  for (const auto& h : meta.at("history")) d.history.push_back({h.at("vertex").get<std::size_t>(), h.at("sign").get<int>()});
  for (const auto& w : j.at("walls"))
    d.walls.push_back({vec_from_json(w.at("label")), w.at("module_id").get<std::string>(), w.at("null").get<bool>(),
                       vecs_from_json(w.at("equations")), vecs_from_json(w.at("inequalities")),
                       vecs_from_json(w.at("generators"))});
  for (const auto& c : j.at("chambers"))
    d.chambers.push_back({vecs_from_json(c.at("generators")), c.at("cluster").get<std::string>(),
                          c.at("corners").get<std::vector<std::string>>()});
  for (const auto& [k, v] : j.at("verification").items())
    if (k != "verified") d.verification[k] = v.get<bool>();
  return d;
}

inline std::string serialize(const PictureDocument& d) { return to_json(d).dump(2) + "\n"; }

inline PictureDocument deserialize(const std::string& text) { return document_from_json(nlohmann::json::parse(text)); }

namespace svg {

using Vec = std::vector<double>;

inline double dotd(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec normalized(Vec v) {
  double l = std::sqrt(dotd(v, v));
  for (auto& x : v) x /= l;
  return v;
}

// orthonormal frame of the picture's ambient subspace
inline std::vector<Vec> frame(const Subspace& s) {
  std::vector<Vec> out;
  for (const auto& b : s.basis()) {
    Vec v;
    for (const auto& x : b) v.push_back(x.get_d());
    for (const auto& u : out) {
      double c = dotd(v, u);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
    }
    out.push_back(normalized(v));
  }
  return out;
}

inline Vec local(const std::vector<Vec>& f, const RatVec& x) {
  Vec xv;
  for (const auto& a : x) xv.push_back(a.get_d());
  Vec y;
  for (const auto& u : f) y.push_back(dotd(xv, u));
  return normalized(y);
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(x) < 5e-4 ? 0.0 : x);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

// fixed candidate poles, in the picture's basis coordinates
inline const std::vector<std::vector<long>>& pole_candidates() {
  static const std::vector<std::vector<long>> c{{1, 2, 3}, {3, -1, 2}, {2, 5, -1}, {-1, 3, 4}, {5, -2, 7},
                                                 {4, 7, 2}, {-3, 5, 1}, {7, 3, -5}, {2, -7, 3}, {6, 1, 11}};
  return c;
}

inline RatVec choose_pole(const PictureDocument& d) {
  Subspace s = d.space();
  for (const auto& c : pole_candidates()) {
    RatVec y;
    for (auto x : c) y.push_back(x);
    RatVec p = s.push(y);
    bool off = true;
    for (const auto& w : d.walls)
      if (Cone::from_hrep(d.n, w.equations, w.inequalities).contains(p)) off = false;
    if (off) return p;
  }
  throw InvariantViolation("no candidate pole avoids every wall");
}

}  // namespace svg

// circle for one-dimensional spheres, stereographic projection for two-dimensional ones
inline std::string render_svg(const PictureDocument& d) {
  std::size_t dim = d.space_dim();
  if (dim != 2 && dim != 3) throw std::invalid_argument("only S^1 and S^2 pictures are rendered");
  auto f = svg::frame(d.space());
  std::vector<std::pair<std::vector<std::vector<double>>, const WallRecord*>> paths;
  std::function<std::pair<double, double>(const svg::Vec&)> proj;
  double scale = 180;
  if (dim == 2) {
    proj = [](const svg::Vec& u) { return std::make_pair(u[0], -u[1]); };
  } else {
    svg::Vec p = svg::local(f, svg::choose_pole(d));
    svg::Vec e1 = std::abs(p[0]) < 0.9 ? svg::Vec{1, 0, 0} : svg::Vec{0, 1, 0};
    double c = svg::dotd(e1, p);
    for (int i = 0; i < 3; ++i) e1[i] -= c * p[i];
    e1 = svg::normalized(e1);
    svg::Vec e2{p[1] * e1[2] - p[2] * e1[1], p[2] * e1[0] - p[0] * e1[2], p[0] * e1[1] - p[1] * e1[0]};
    proj = [p, e1, e2](const svg::Vec& u) {
      double t = 1 - svg::dotd(u, p);
      return std::make_pair(svg::dotd(u, e1) / t, -svg::dotd(u, e2) / t);
    };
  }
  auto arc = [&](const svg::Vec& a, const svg::Vec& b) {
    std::vector<std::vector<double>> pts;
    for (int s = 0; s <= 24; ++s) {
      double t = s / 24.0;
      svg::Vec v(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) v[i] = (1 - t) * a[i] + t * b[i];
      auto [x, y] = proj(svg::normalized(v));
      pts.push_back({x, y});
    }
    return pts;
  };
  for (const auto& w : d.walls) {
    Cone c = Cone::from_hrep(d.n, w.equations, w.inequalities);
    std::vector<svg::Vec> rays, lin;
    for (const auto& r : c.rays()) rays.push_back(svg::local(f, r));
    for (const auto& l : c.lineality()) lin.push_back(svg::local(f, l));
    if (dim == 2) {
      for (auto& l : lin) {
        rays.push_back(l);
        rays.push_back(svg::Vec{-l[0], -l[1]});
      }
      for (const auto& r : rays) {
        auto [x, y] = proj(r);
        paths.push_back({{{x, y}}, &w});
      }
      continue;
    }
    std::vector<std::vector<double>> pts;
    auto neg = [](svg::Vec v) {
      for (auto& x : v) x = -x;
      return v;
    };
    auto join = [&](const svg::Vec& a, const svg::Vec& b) {
      // a half great circle is split at its midpoint direction
      double c = svg::dotd(a, b);
      if (c < -0.999) throw InvariantViolation("antipodal arc without a midpoint");
      auto seg = arc(a, b);
      if (!pts.empty()) seg.erase(seg.begin());
      pts.insert(pts.end(), seg.begin(), seg.end());
    };
    if (lin.size() == 2) {
      svg::Vec a = lin[0], b = lin[1];
      join(a, b);
      join(b, neg(a));
      join(neg(a), neg(b));
      join(neg(b), a);
    } else if (lin.size() == 1) {
      join(lin[0], rays.at(0));
      join(rays.at(0), neg(lin[0]));
    } else if (rays.size() == 2) {
      join(rays[0], rays[1]);
    } else {
      continue;
    }
    paths.push_back({pts, &w});
  }
  double lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
  for (const auto& [pts, w] : paths)
    for (const auto& p : pts) {
      lo_x = std::min(lo_x, p[0]);
      hi_x = std::max(hi_x, p[0]);
      lo_y = std::min(lo_y, p[1]);
      hi_y = std::max(hi_y, p[1]);
    }
  double span = std::max(hi_x - lo_x, hi_y - lo_y);
  double size = 2 * scale + 80;
  auto X = [&](double x) { return 40 + (x - lo_x) / span * 2 * scale; };
  auto Y = [&](double y) { return 40 + (y - lo_y) / span * 2 * scale; };
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + svg::fmt(size) + "\" height=\"" +
         svg::fmt(size) + "\" viewBox=\"0 0 " + svg::fmt(size) + " " + svg::fmt(size) + "\">\n";
  out += "<title>" + svg::escape(d.kind + " " + d.quiver) + "</title>\n";
  if (dim == 2) {
    out += "<circle cx=\"" + svg::fmt(X(0)) + "\" cy=\"" + svg::fmt(Y(0)) + "\" r=\"" +
           svg::fmt(2 * scale / span) + "\" fill=\"none\" stroke=\"#999\"/>\n";
  }
  for (const auto& [pts, w] : paths) {
    std::string dash = w->null ? " stroke-dasharray=\"6 4\"" : "";
    std::string name = svg::escape(w->module_id);
    if (pts.size() == 1) {
      out += "<circle cx=\"" + svg::fmt(X(pts[0][0])) + "\" cy=\"" + svg::fmt(Y(pts[0][1])) +
             "\" r=\"4\" fill=\"black\"/>\n";
    } else {
      out += "<polyline fill=\"none\" stroke=\"black\"" + dash + " points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i)
        out += (i ? " " : "") + svg::fmt(X(pts[i][0])) + "," + svg::fmt(Y(pts[i][1]));
      out += "\"/>\n";
    }
    const auto& mid = pts[pts.size() / 2];
    out += "<text x=\"" + svg::fmt(X(mid[0]) + 5) + "\" y=\"" + svg::fmt(Y(mid[1]) - 5) +
           "\" font-size=\"11\">" + name + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace wcs
