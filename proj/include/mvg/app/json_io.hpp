#pragma once
// ConfigDocument JSON and result serialization. Exact values travel as
// strings ("p/q"); *_approx fields carry decimals for display only.

#include "mvg/game.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvg::app {

using json = nlohmann::json;
using Q = Rational;

/// Error with a stable machine-readable code.
class AppError : public std::runtime_error {
 public:
  AppError(std::string code, const std::string& message, int http_status = 400)
      : std::runtime_error(message), code_(std::move(code)), status_(http_status) {}
  const std::string& code() const { return code_; }
  int http_status() const { return status_; }

 private:
  std::string code_;
  int status_;
};

struct ConfigDocument {
  Rect<Q> rect{Q(1), Q(1)};
  std::vector<Point<Q>> white;
  std::optional<std::vector<Point<Q>>> black;
  std::string name;
  std::string provenance;
};

inline Q scalar_from_json(const json& j, const char* what) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned()) return parse_rational(j.dump());
    // Shortest round-trip text of the double, read as an exact decimal.
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const ParseError& e) {
    throw AppError("parse_error", std::string(what) + ": " + e.what());
  }
  throw AppError("parse_error", std::string(what) + ": expected a number or rational string");
}

inline std::vector<Point<Q>> points_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw AppError("parse_error", std::string(what) + " must be an array of [x, y]");
  std::vector<Point<Q>> out;
  for (const auto& p : j) {
    if (p.is_array() && p.size() == 2) {
      out.push_back({scalar_from_json(p[0], what), scalar_from_json(p[1], what)});
    } else if (p.is_object() && p.contains("x") && p.contains("y")) {
      out.push_back({scalar_from_json(p["x"], what), scalar_from_json(p["y"], what)});
    } else {
      throw AppError("parse_error", std::string(what) + " entries must be [x, y]");
    }
  }
  return out;
}

inline void check_points(const std::vector<Point<Q>>& all, const Rect<Q>& rect) {
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!rect.contains(all[i])) {
      throw AppError("out_of_rect", "point (" + format_rational(all[i].x) + ", " + format_rational(all[i].y) +
                                        ") lies outside the rectangle");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (all[i] == all[j]) {
        throw AppError("duplicate_point",
                       "duplicate point (" + format_rational(all[i].x) + ", " + format_rational(all[i].y) + ")");
      }
  }
}

inline ConfigDocument document_from_json(const json& j) {
  if (!j.is_object()) throw AppError("parse_error", "document must be a JSON object");
  ConfigDocument doc;
  if (!j.contains("rect")) throw AppError("parse_error", "missing 'rect'");
  const auto& r = j["rect"];
  if (!r.is_object() || !r.contains("width") || !r.contains("height")) {
    throw AppError("parse_error", "'rect' needs width and height");
  }
  Q w = scalar_from_json(r["width"], "rect.width"), h = scalar_from_json(r["height"], "rect.height");
  if (sign_of(w) <= 0 || sign_of(h) <= 0) throw AppError("invalid_rect", "rectangle dimensions must be positive");
  doc.rect = Rect<Q>(w, h);
  if (j.contains("white")) doc.white = points_from_json(j["white"], "white");
  else if (j.contains("points")) doc.white = points_from_json(j["points"], "points");
  if (j.contains("black") && !j["black"].is_null()) doc.black = points_from_json(j["black"], "black");
  if (j.contains("metadata") && j["metadata"].is_object()) {
    const auto& m = j["metadata"];
    if (m.contains("name") && m["name"].is_string()) doc.name = m["name"].get<std::string>();
    if (m.contains("provenance") && m["provenance"].is_string()) doc.provenance = m["provenance"].get<std::string>();
  }
  auto all = doc.white;
  if (doc.black) all.insert(all.end(), doc.black->begin(), doc.black->end());
  check_points(all, doc.rect);
  return doc;
}

inline ConfigDocument document_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw AppError("parse_error", std::string("malformed JSON: ") + e.what());
  }
  return document_from_json(j);
}

inline json to_json(const Q& q) { return format_rational(q); }

inline json point_json(const Point<Q>& p) { return json::array({to_json(p.x), to_json(p.y)}); }

inline json points_json(const std::vector<Point<Q>>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

inline json points_approx(const std::vector<Point<Q>>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(json::array({p.x.get_d(), p.y.get_d()}));
  return a;
}

inline json document_to_json(const ConfigDocument& doc) {
  json j;
  j["rect"] = {{"width", to_json(doc.rect.width)}, {"height", to_json(doc.rect.height)}};
  j["white"] = points_json(doc.white);
  if (doc.black) j["black"] = points_json(*doc.black);
  json meta = json::object();
  if (!doc.name.empty()) meta["name"] = doc.name;
  if (!doc.provenance.empty()) meta["provenance"] = doc.provenance;
  if (!meta.empty()) j["metadata"] = meta;
  return j;
}

inline ConfigDocument document_of(const Configuration<Q>& cfg, std::string name = {}, std::string provenance = {}) {
  ConfigDocument d;
  d.rect = cfg.rect;
  d.white = cfg.points;
  d.name = std::move(name);
  d.provenance = std::move(provenance);
  return d;
}

inline void put(json& j, const std::string& key, const Q& v) {
  j[key] = to_json(v);
  j[key + "_approx"] = v.get_d();
}

inline json region_json(const Region<Q>& r) {
  json pieces = json::array();
  for (const auto& poly : r.pieces()) {
    json p = json::array();
    for (const auto& v : poly) p.push_back(point_json(v));
    pieces.push_back(p);
  }
  return pieces;
}

inline json diagram_json(const Diagram<Q>& d) {
  json j;
  j["rect"] = {{"width", to_json(d.rect.width)}, {"height", to_json(d.rect.height)}};
  json cells = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    json c;
    c["site"] = point_json(d.sites[i]);
    put(c, "area", d.cell_area(i));
    c["pieces"] = region_json(d.cells[i]);
    cells.push_back(c);
  }
  j["cells"] = cells;
  json neutral;
  put(neutral, "area", d.neutral_area());
  neutral["pieces"] = region_json(d.neutral);
  j["neutral"] = neutral;
  return j;
}

inline json balance_json(const BalanceReport<Q>& rep) {
  json j;
  j["balanced"] = rep.is_balanced;
  put(j, "target", rep.target);
  put(j, "worst_deviation", rep.worst_deviation);
  put(j, "neutral_area", rep.neutral_area);
  json sites = json::array();
  for (std::size_t i = 0; i < rep.halves.size(); ++i) {
    json s;
    put(s, "cell_area", rep.cell_areas[i]);
    const char* names[4] = {"left", "right", "top", "bottom"};
    for (int k = 0; k < 4; ++k) put(s, names[k], rep.halves[i][k]);
    sites.push_back(s);
  }
  j["sites"] = sites;
  return j;
}

inline json score_json(const Score<Q>& s) {
  json j;
  put(j, "white", s.white_area);
  put(j, "black", s.black_area);
  put(j, "neutral", s.neutral_area);
  j["winner"] = to_string(s.winner);
  return j;
}

inline json outcome_json(const StrategyOutcome<Q>& o) {
  json j;
  j["certificate"] = to_string(o.certificate);
  j["black"] = points_json(o.black);
  j["black_approx"] = points_approx(o.black);
  j["score"] = score_json(o.score);
  return j;
}

inline json error_json(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace mvg::app
