// mvg: command-line front end for the Manhattan Voronoi toolkit.

// Eigen (via search.hpp) must precede httplib: <resolv.h> defines _res.
#include "mvg/search.hpp"

#include "mvg/app/json_io.hpp"
#include "mvg/app/service.hpp"
#include "mvg/app/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace mvg;
using namespace mvg::app;

namespace {

// Exit statuses.
enum Exit {
  kOk = 0,
  kNotBalanced = 1,
  kUsage = 2,
  kParse = 3,
  kOutOfRect = 4,
  kDuplicate = 5,
  kGeometry = 6,
  kGame = 7,
  kUnsupported = 8,
  kIo = 9,
  kInternal = 10,
};

int exit_for(const std::string& code) {
  if (code == "parse_error") return kParse;
  if (code == "out_of_rect") return kOutOfRect;
  if (code == "duplicate_point") return kDuplicate;
  if (code == "invalid_rect" || code == "invalid_geometry") return kGeometry;
  if (code == "invalid_game") return kGame;
  if (code == "unsupported_parameter" || code == "unknown_block") return kUnsupported;
  if (code == "io_error") return kIo;
  return kInternal;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw AppError("io_error", "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw AppError("io_error", "cannot write '" + path + "'");
  out << text;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// "R3", "R2:5/4", "grid:2x3" (unit cells).
Block<Q> block_from_token(const std::string& token) {
  Params p;
  std::string name = token;
  if (auto colon = token.find(':'); colon != std::string::npos) {
    name = token.substr(0, colon);
    std::string arg = token.substr(colon + 1);
    if (name == "grid") {
      auto x = arg.find('x');
      if (x == std::string::npos) throw AppError("unsupported_parameter", "grid blocks are written grid:ROWSxCOLS", 422);
      p["rows"] = arg.substr(0, x);
      p["cols"] = arg.substr(x + 1);
    } else {
      p["rho"] = arg;
    }
  }
  return atomic_by_name(name, p);
}

Q aspect(const Rect<Q>& r) { return r.width < r.height ? Q(r.height / r.width) : Q(r.width / r.height); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Manhattan Voronoi diagrams, balanced configurations and the one-round Voronoi game"};
  cli.require_subcommand(1);

  std::string input = "-", svg_out, json_out, tie;
  auto* diagram = cli.add_subcommand("diagram", "exact diagram of a configuration");
  diagram->add_option("--input,-i", input, "ConfigDocument JSON ('-' for stdin)");
  diagram->add_option("--svg", svg_out, "write an SVG rendering");
  diagram->add_option("--json", json_out, "write the diagram JSON to a file instead of stdout");
  diagram->add_option("--tie", tie, "tie policy for white-only documents")->check(CLI::IsMember({"neutral", "award-horizontal"}));

  auto* balance = cli.add_subcommand("balance", "half-cell audit; exit 0 iff balanced");
  balance->add_option("--input,-i", input, "ConfigDocument JSON ('-' for stdin)");

  std::string block_name, rho_text;
  int rows = 0, cols = 0;
  auto* atomic_cmd = cli.add_subcommand("atomic", "emit a named block");
  atomic_cmd->add_option("name", block_name, "R2, R3, R3', R4, R5 or grid")->required();
  atomic_cmd->add_option("--rho", rho_text, "aspect ratio for R2");
  atomic_cmd->add_option("--rows", rows, "grid rows");
  atomic_cmd->add_option("--cols", cols, "grid columns");

  std::vector<std::string> blocks;
  auto* concat = cli.add_subcommand("concat", "glue blocks left to right");
  concat->add_option("blocks", blocks, "block tokens: R3, R3', R5, R2:<rho>, grid:<r>x<c>")->required();

  std::string bits;
  auto* encode = cli.add_subcommand("encode", "balanced configuration encoding a 0-1 string");
  encode->add_option("bits", bits, "binary string")->required();

  std::string game_mode, n_text;
  auto* game = cli.add_subcommand("game", "score a position, respond as Black, or state the winner");
  game->add_option("mode", game_mode, "score | respond | verdict")->required()->check(CLI::IsMember({"score", "respond", "verdict"}));
  game->add_option("--input,-i", input, "ConfigDocument JSON ('-' for stdin)");
  game->add_option("--n", n_text, "points per player (verdict)");
  game->add_option("--rho", rho_text, "aspect ratio (verdict)");
  int lattice = 64;
  game->add_option("--lattice", lattice, "lattice points per unit length for the winning-point search");

  int search_n = 2, resolution = 32, seeds = 48;
  double tol = 1e-4, rho_min = 1, rho_max = 2;
  std::string fixed_rho;
  auto* search = cli.add_subcommand("search", "numerical search for balanced non-grid configurations");
  search->add_option("--n", search_n, "number of sites (2 or 3)")->check(CLI::IsMember({2, 3}));
  search->add_option("--resolution", resolution, "lattice resolution")->check(CLI::Range(8, 1024));
  search->add_option("--tol", tol, "relative tolerance on half-cell deviation");
  search->add_option("--rho-min", rho_min, "smallest seeded aspect ratio");
  search->add_option("--rho-max", rho_max, "largest seeded aspect ratio");
  search->add_option("--fixed-rho", fixed_rho, "keep the aspect ratio fixed");
  search->add_option("--seeds", seeds, "random seeds per aspect ratio");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = cli.add_subcommand("serve", "run the HTTP JSON service");
  auto* port_opt = serve->add_option("--port", port, "TCP port (MVG_PORT)");
  auto* host_opt = serve->add_option("--host", host, "bind address (MVG_HOST)");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*diagram) {
      auto doc = document_from_string(read_input(input));
      auto d = document_diagram(doc, tie);
      if (!svg_out.empty()) {
        SvgOptions so;
        so.colour.assign(doc.white.size(), 0);
        if (doc.black) so.colour.resize(doc.white.size() + doc.black->size(), 1);
        write_file(svg_out, to_svg(d, so));
      }
      json j = diagram_json(d);
      if (json_out.empty()) emit(j); else write_file(json_out, j.dump(2) + "\n");
      return kOk;
    }
    if (*balance) {
      auto doc = document_from_string(read_input(input));
      if (doc.white.empty()) throw AppError("invalid_geometry", "configuration is empty");
      auto rep = is_balanced(Configuration<Q>{doc.rect, doc.white});
      emit(balance_json(rep));
      return rep.is_balanced ? kOk : kNotBalanced;
    }
    if (*atomic_cmd) {
      Params p;
      if (!rho_text.empty()) p["rho"] = rho_text;
      if (rows) p["rows"] = std::to_string(rows);
      if (cols) p["cols"] = std::to_string(cols);
      emit(handle_atomic(block_name, p));
      return kOk;
    }
    if (*concat) {
      std::vector<Block<Q>> list;
      for (const auto& t : blocks) list.push_back(block_from_token(t));
      Configuration<Q> cfg;
      try {
        cfg = concatenate(list);
      } catch (const std::invalid_argument& e) {
        throw AppError("unsupported_parameter", e.what(), 422);
      }
      std::string name;
      for (const auto& t : blocks) name += (name.empty() ? "" : " ") + t;
      emit(document_to_json(document_of(cfg, name, "concat")));
      return kOk;
    }
    if (*encode) {
      emit(document_to_json(document_of(encode_binary_string(bits), bits, "encode")));
      return kOk;
    }
    if (*game) {
      if (game_mode == "verdict") {
        Params p;
        if (!n_text.empty() || !rho_text.empty()) {
          p["n"] = n_text;
          p["rho"] = rho_text;
          if (n_text.empty() || rho_text.empty()) throw AppError("unsupported_parameter", "give both --n and --rho", 422);
        } else {
          auto doc = document_from_string(read_input(input));
          p["n"] = std::to_string(doc.white.size());
          p["rho"] = format_rational(aspect(doc.rect));
        }
        emit(handle_verdict(p));
        return kOk;
      }
      json req = parse_body(read_input(input));
      if (game_mode == "score") {
        emit(handle_score(req));
      } else {
        req["search"]["lattice_per_unit"] = lattice;
        emit(handle_respond(req));
      }
      return kOk;
    }
    if (*search) {
      SearchOptions opt;
      opt.rho_min = rho_min;
      opt.rho_max = rho_max;
      opt.seeds_per_rho = seeds;
      if (!fixed_rho.empty()) opt.fixed_rho = parse_rational(fixed_rho);
      json hits = json::array();
      for (const auto& h : search_balanced_nongrid(search_n, resolution, tol, opt)) {
        json j = document_to_json(document_of(h.config));
        j["rho_approx"] = h.rho;
        j["deviation"] = h.deviation;
        j["points_approx"] = points_approx(h.config.points);
        hits.push_back(j);
      }
      emit(hits);
      return kOk;
    }
    if (*serve) {
      if (port_opt->count() == 0) {
        if (const char* env = std::getenv("MVG_PORT")) port = std::atoi(env);
      }
      if (host_opt->count() == 0) {
        if (const char* env = std::getenv("MVG_HOST")) host = env;
      }
      httplib::Server server;
      install_routes(server);
      std::cerr << "listening on " << host << ':' << port << '\n';
      if (!server.listen(host, port)) throw AppError("io_error", "cannot bind " + host + ":" + std::to_string(port));
      return kOk;
    }
  } catch (const AppError& e) {
    std::cerr << error_json(e.code(), e.what()).dump() << '\n';
    return exit_for(e.code());
  } catch (const ParseError& e) {
    std::cerr << error_json("parse_error", e.what()).dump() << '\n';
    return kParse;
  } catch (const GeometryError& e) {
    std::cerr << error_json("invalid_geometry", e.what()).dump() << '\n';
    return kGeometry;
  } catch (const GameError& e) {
    std::cerr << error_json("invalid_game", e.what()).dump() << '\n';
    return kGame;
  } catch (const EncodingError& e) {
    std::cerr << error_json("unsupported_parameter", e.what()).dump() << '\n';
    return kUnsupported;
  } catch (const std::exception& e) {
    std::cerr << error_json("internal", e.what()).dump() << '\n';
    return kInternal;
  }
  return kUsage;
}
