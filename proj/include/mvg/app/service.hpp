#pragma once
// Stateless JSON service. Handlers are pure functions of the request; the HTTP
// layer only routes and sets status codes.

#include "mvg/app/json_io.hpp"
#include "mvg/app/svg.hpp"
#include "mvg/balance.hpp"
#include "mvg/game.hpp"

#include <httplib.h>

#include <map>
#include <string>

namespace mvg::app {

struct Reply {
  int status = 200;
  json body;
};

using Params = std::map<std::string, std::string>;

inline TieRule tie_rule_from(const std::string& name) {
  if (name.empty() || name == "neutral") return TieRule::uniform(TiePolicy::NeutralZone);
  if (name == "award-horizontal") return TieRule::uniform(TiePolicy::AwardHorizontal);
  throw AppError("unsupported_parameter", "unknown tie policy '" + name + "'", 422);
}

inline json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw AppError("parse_error", std::string("malformed JSON: ") + e.what());
  }
}

// Diagram of a document: the game rule when black points are present,
// otherwise the requested tie policy.
inline Diagram<Q> document_diagram(const ConfigDocument& doc, const std::string& tie) {
  if (doc.black) return game_diagram(GamePosition<Q>{doc.rect, doc.white, *doc.black});
  return voronoi_diagram(doc.white, doc.rect, tie_rule_from(tie));
}

inline json diagram_reply(const ConfigDocument& doc, const std::string& tie, bool with_svg) {
  auto d = document_diagram(doc, tie);
  json j = diagram_json(d);
  if (with_svg) {
    SvgOptions so;
    so.colour.assign(doc.white.size(), 0);
    if (doc.black) so.colour.resize(doc.white.size() + doc.black->size(), 1);
    j["svg"] = to_svg(d, so);
  }
  return j;
}

inline json handle_diagram(const json& req) {
  auto doc = document_from_json(req);
  const std::string tie = req.contains("tie") && req["tie"].is_string() ? req["tie"].get<std::string>() : "";
  const bool svg = req.contains("svg") && req["svg"].is_boolean() && req["svg"].get<bool>();
  return diagram_reply(doc, tie, svg);
}

inline json handle_score(const json& req) {
  auto doc = document_from_json(req);
  if (!doc.black) throw AppError("invalid_game", "score needs a 'black' point list");
  if (doc.black->size() != doc.white.size()) {
    throw AppError("invalid_game", "white and black must place the same number of points");
  }
  return score_json(score(GamePosition<Q>{doc.rect, doc.white, *doc.black}));
}

inline SearchParams search_params_from(const json& req) {
  SearchParams sp;
  if (req.contains("search") && req["search"].is_object()) {
    const auto& s = req["search"];
    auto get = [&](const char* key, int& field, int lo, int hi) {
      if (!s.contains(key)) return;
      if (!s[key].is_number_integer()) throw AppError("unsupported_parameter", std::string(key) + " must be an integer", 422);
      const int v = s[key].get<int>();
      if (v < lo || v > hi) throw AppError("unsupported_parameter", std::string(key) + " out of range", 422);
      field = v;
    };
    get("lattice_per_unit", sp.lattice_per_unit, 4, 256);
    get("delta_ladder", sp.delta_ladder, 1, 40);
    get("refine_top", sp.refine_top, 0, 256);
    get("certify_top", sp.certify_top, 1, 1024);
  }
  return sp;
}

inline json handle_respond(const json& req) {
  auto doc = document_from_json(req);
  if (doc.white.empty()) throw AppError("invalid_game", "white set is empty");
  auto out = black_best_response(doc.white, doc.rect, search_params_from(req));
  json j = outcome_json(out);
  j["n"] = doc.white.size();
  put(j, "target", doc.rect.area() / Q(static_cast<long>(2 * doc.white.size())));
  return j;
}

inline json handle_balance(const json& req) {
  auto doc = document_from_json(req);
  if (doc.white.empty()) throw AppError("invalid_geometry", "configuration is empty");
  return balance_json(is_balanced(Configuration<Q>{doc.rect, doc.white}));
}

inline Q param_rational(const Params& q, const std::string& key) {
  auto it = q.find(key);
  if (it == q.end()) throw AppError("unsupported_parameter", "missing parameter '" + key + "'", 422);
  try {
    return parse_rational(it->second);
  } catch (const ParseError& e) {
    throw AppError("unsupported_parameter", key + ": " + e.what(), 422);
  }
}

inline int param_int(const Params& q, const std::string& key) {
  Q v = param_rational(q, key);
  if (v.get_den() != 1 || !v.get_num().fits_sint_p()) throw AppError("unsupported_parameter", key + " must be an integer", 422);
  return static_cast<int>(v.get_num().get_si());
}

inline Block<Q> atomic_by_name(const std::string& name, const Params& q) {
  try {
    if (name == "grid") {
      const int rows = param_int(q, "rows"), cols = param_int(q, "cols");
      if (rows < 1 || cols < 1 || rows * cols > 64) throw AppError("unsupported_parameter", "grid size out of range", 422);
      Q w = q.count("width") ? param_rational(q, "width") : Q(cols);
      Q h = q.count("height") ? param_rational(q, "height") : Q(rows);
      if (sign_of(w) <= 0 || sign_of(h) <= 0) throw AppError("unsupported_parameter", "grid rectangle must be positive", 422);
      return grid_block(rows, cols, Rect<Q>(w, h));
    }
    std::optional<Q> rho;
    if (q.count("rho")) rho = param_rational(q, "rho");
    return atomic(name, rho);
  } catch (const UnknownBlock& e) {
    throw AppError("unknown_block", e.what(), 422);
  } catch (const std::out_of_range& e) {
    throw AppError("unsupported_parameter", e.what(), 422);
  }
}

inline json handle_atomic(const std::string& name, const Params& q) {
  auto b = atomic_by_name(name, q);
  return document_to_json(document_of(b.configuration(), b.name, "atomic"));
}

inline json handle_verdict(const Params& q) {
  const int n = param_int(q, "n");
  const Q rho = param_rational(q, "rho");
  if (n < 1 || rho < 1) throw AppError("unsupported_parameter", "need n >= 1 and rho >= 1", 422);
  return {{"n", n}, {"rho", to_json(rho)}, {"rho_approx", rho.get_d()}, {"winner", to_string(verdict(n, rho))}};
}

/// Runs a handler and maps exceptions to error replies.
template <class F>
Reply guarded(F f) {
  try {
    return {200, f()};
  } catch (const AppError& e) {
    return {e.http_status(), error_json(e.code(), e.what())};
  } catch (const ParseError& e) {
    return {400, error_json("parse_error", e.what())};
  } catch (const GeometryError& e) {
    return {400, error_json("invalid_geometry", e.what())};
  } catch (const GameError& e) {
    return {400, error_json("invalid_game", e.what())};
  } catch (const EncodingError& e) {
    return {422, error_json("unsupported_parameter", e.what())};
  } catch (const std::exception& e) {
    return {500, error_json("internal", e.what())};
  }
}

inline std::string dump(const json& j) { return j.dump(); }

inline void install_routes(httplib::Server& server) {
  auto reply = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(dump(r.body), "application/json");
  };
  auto post = [&](const char* path, json (*handler)(const json&)) {
    server.Post(path, [reply, handler](const httplib::Request& req, httplib::Response& res) {
      reply(res, guarded([&] { return handler(parse_body(req.body)); }));
    });
  };
  post("/api/diagram", handle_diagram);
  post("/api/score", handle_score);
  post("/api/respond", handle_respond);
  post("/api/balance", handle_balance);
  auto params_of = [](const httplib::Request& req) {
    Params p;
    for (const auto& [k, v] : req.params) p[k] = v;
    return p;
  };
  server.Get(R"(/api/atomic/([^/]+))", [reply, params_of](const httplib::Request& req, httplib::Response& res) {
    reply(res, guarded([&] { return handle_atomic(req.matches[1].str(), params_of(req)); }));
  });
  server.Get("/api/verdict", [reply, params_of](const httplib::Request& req, httplib::Response& res) {
    reply(res, guarded([&] { return handle_verdict(params_of(req)); }));
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(dump(error_json(res.status == 404 ? "not_found" : "http_error", "no such endpoint")),
                      "application/json");
    }
  });
}

}  // namespace mvg::app
