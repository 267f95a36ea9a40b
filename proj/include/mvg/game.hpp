#pragma once
// One-round Manhattan Voronoi game: scoring, White's strategy and Black's
// constructive counter-strategies.
//
// Same-colour 2-D ties are split as in AwardHorizontal; ties between the two
// colours stay neutral. Every claimed win is re-checked on the exact diagram.

#include "mvg/balance.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace mvg {

enum class Winner { White, Black, Tie };

inline const char* to_string(Winner w) {
  switch (w) {
    case Winner::White: return "White";
    case Winner::Black: return "Black";
    case Winner::Tie: return "Tie";
  }
  return "?";
}

template <class T>
struct GamePosition {
  Rect<T> rect;
  std::vector<Point<T>> white;
  std::vector<Point<T>> black;
};

template <class T>
struct Score {
  T white_area{};
  T black_area{};
  T neutral_area{};
  Winner winner = Winner::Tie;
};

class GameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline TieRule game_tie_rule(std::size_t n_white, std::size_t n_black) {
  TieRule rule{TiePolicy::AwardHorizontal, TiePolicy::NeutralZone, {}};
  rule.group.assign(n_white, 0);
  rule.group.resize(n_white + n_black, 1);
  return rule;
}

/// Diagram of all points; sites are white first, then black.
template <class T>
Diagram<T> game_diagram(const GamePosition<T>& pos) {
  std::vector<Point<T>> sites = pos.white;
  for (const auto& b : pos.black) {
    if (std::find(pos.white.begin(), pos.white.end(), b) != pos.white.end()) {
      throw GameError("black point coincides with a white point");
    }
    sites.push_back(b);
  }
  return voronoi_diagram(sites, pos.rect, game_tie_rule(pos.white.size(), pos.black.size()));
}

template <class T>
Winner compare_areas(const T& white, const T& black) {
  if (black < white) return Winner::White;
  if (white < black) return Winner::Black;
  return Winner::Tie;
}

template <class T>
Score<T> score(const GamePosition<T>& pos) {
  auto d = game_diagram(pos);
  Score<T> s;
  for (std::size_t i = 0; i < pos.white.size(); ++i) s.white_area += d.cell_area(i);
  for (std::size_t i = 0; i < pos.black.size(); ++i) s.black_area += d.cell_area(pos.white.size() + i);
  s.neutral_area = d.neutral_area();
  s.winner = compare_areas(s.white_area, s.black_area);
  return s;
}

/// Diagram of the white points alone under the game's tie rule.
template <class T>
Diagram<T> white_diagram(const std::vector<Point<T>>& white, const Rect<T>& rect) {
  return voronoi_diagram(white, rect, TiePolicy::AwardHorizontal);
}

/// Area of the cell of a single black point b added to the white set.
template <class T>
T black_cell_area(const std::vector<Point<T>>& white, const Point<T>& b, const Rect<T>& rect) {
  GamePosition<T> pos{rect, white, {b}};
  auto d = game_diagram(pos);
  return d.cell_area(white.size());
}

/// Black cell area plus half of the neutral area around it.
template <class T>
T black_cell_area_half_neutral(const std::vector<Point<T>>& white, const Point<T>& b, const Rect<T>& rect) {
  GamePosition<T> pos{rect, white, {b}};
  auto d = game_diagram(pos);
  return d.cell_area(white.size()) + d.neutral_area() / 2;
}

/// Theory: White wins iff rho >= n.
inline Winner verdict(int n, const Rational& rho) {
  if (n < 1) throw GameError("n must be at least 1");
  if (rho < 1) throw GameError("rho must be at least 1");
  return rho >= n ? Winner::White : Winner::Black;
}

template <class T>
T aspect_of(const Rect<T>& rect) {
  return rect.width / rect.height;
}

/// The 1 x n grid; only meaningful (unbeatable) when rho >= n.
template <class T>
Configuration<T> white_optimal(int n, const Rect<T>& rect) {
  if (n < 1) throw GameError("n must be at least 1");
  if (aspect_of(rect) < T(n)) throw GameError("no unbeatable white set exists for rho < n");
  return make_grid(1, n, rect);
}

// ---------------------------------------------------------------------------
// Audits

template <class T>
std::vector<std::array<T, 4>> white_halves(const std::vector<Point<T>>& white, const Rect<T>& rect) {
  auto d = white_diagram(white, rect);
  std::vector<std::array<T, 4>> out;
  for (std::size_t i = 0; i < white.size(); ++i) {
    auto h = half_cells(white[i], d.cells[i]);
    out.push_back({h.left.area(), h.right.area(), h.top.area(), h.bottom.area()});
  }
  return out;
}

/// Every half cell has area area(rect) / (2n).
template <class T>
bool satisfies_p1(const std::vector<Point<T>>& white, const Rect<T>& rect) {
  const T target = rect.area() / T(static_cast<long>(2 * white.size()));
  for (const auto& h : white_halves(white, rect))
    for (const auto& v : h)
      if (!(v == target)) return false;
  return true;
}

/// Arms of non-bridge cells equal; opposite boundary arms of a bridge equal
/// and, for n > 1, shortest among its arms.
template <class T>
bool satisfies_p2(const std::vector<Point<T>>& white, const Rect<T>& rect) {
  auto d = white_diagram(white, rect);
  for (std::size_t i = 0; i < white.size(); ++i) {
    auto a = arms(white[i], d.cells[i], rect);
    const auto& L = a.length;
    const T mn = std::min({L[0], L[1], L[2], L[3]});
    if (!a.is_bridge()) {
      if (!(L[0] == L[1] && L[1] == L[2] && L[2] == L[3])) return false;
      continue;
    }
    for (auto [u, v] : {std::pair{0, 1}, std::pair{2, 3}}) {
      if (!(a.boundary[u] && a.boundary[v])) continue;
      if (!(L[u] == L[v])) return false;
      if (white.size() > 1 && !(L[u] == mn)) return false;
    }
  }
  return true;
}

/// (rows, cols) if the white set is exactly make_grid(rows, cols, rect).
template <class T>
std::optional<std::pair<int, int>> detect_grid(const std::vector<Point<T>>& white, const Rect<T>& rect) {
  const int n = static_cast<int>(white.size());
  auto sorted = white;
  std::sort(sorted.begin(), sorted.end());
  for (int a = 1; a <= n; ++a) {
    if (n % a) continue;
    auto g = make_grid(a, n / a, rect).points;
    std::sort(g.begin(), g.end());
    if (g == sorted) return std::make_pair(a, n / a);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stealing a half cell

template <class T>
struct StealResult {
  Point<T> point;
  T stolen{};     // area of V(b) inside the half cell
  T half_area{};
  T delta{};      // offset from the white point
  bool clamped = false;  // offset limited by the cell rather than by eps
};

/// Black point b next to white[index] capturing the given half cell up to eps.
/// The loss is at most (sum of the two perpendicular arms) * delta / 2.
template <class T>
StealResult<T> steal_point(std::size_t index, HalfId half, const T& eps, const std::vector<Point<T>>& white,
                           const Rect<T>& rect) {
  if (sign_of(eps) <= 0) throw GameError("eps must be positive");
  if (index >= white.size()) throw GameError("white index out of range");
  auto d = white_diagram(white, rect);
  const auto& w = white[index];
  const auto& cell = d.cells[index];
  auto halves = half_cells(w, cell);
  const Region<T>& H = halves[half];
  auto a = arms(w, cell, rect);
  const bool horizontal_move = half == HalfId::Left || half == HalfId::Right;
  const T perpendicular = horizontal_move ? T(a[ArmDir::Top] + a[ArmDir::Bottom]) : T(a[ArmDir::Left] + a[ArmDir::Right]);
  const ArmDir along = half == HalfId::Left    ? ArmDir::Left
                       : half == HalfId::Right ? ArmDir::Right
                       : half == HalfId::Top   ? ArmDir::Top
                                               : ArmDir::Bottom;
  const T clearance = a[along];
  if (sign_of(clearance) == 0) throw GameError("half cell has zero width");
  StealResult<T> out;
  out.half_area = H.area();
  T delta = sign_of(perpendicular) > 0 ? T(2 * eps / perpendicular) : T(clearance / 2);
  if (!(delta < clearance)) {
    delta = clearance / 2;
    out.clamped = true;
  }
  for (int attempt = 0; attempt < 80; ++attempt) {
    Point<T> b = w;
    switch (half) {
      case HalfId::Left: b.x -= delta; break;
      case HalfId::Right: b.x += delta; break;
      case HalfId::Top: b.y += delta; break;
      case HalfId::Bottom: b.y -= delta; break;
    }
    GamePosition<T> pos{rect, white, {b}};
    auto gd = game_diagram(pos);
    T stolen = gd.cells[white.size()].intersection(H).area();
    if (!(stolen < out.half_area - eps)) {
      out.point = b;
      out.stolen = stolen;
      out.delta = delta;
      return out;
    }
    delta /= 2;
  }
  throw GameError("could not certify the steal");
}

// ---------------------------------------------------------------------------
// Black strategies

enum class Certificate { HalvingAttack, WinningPointPlusSteals, BestTieAttempt };

inline const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::HalvingAttack: return "HalvingAttack";
    case Certificate::WinningPointPlusSteals: return "WinningPointPlusSteals";
    case Certificate::BestTieAttempt: return "BestTieAttempt";
  }
  return "?";
}

template <class T>
struct StrategyOutcome {
  std::vector<Point<T>> black;
  Score<T> score;
  Certificate certificate = Certificate::BestTieAttempt;
};

/// If some half cell differs from area/(2n), n steals over the n largest halves
/// of one orientation class give Black more than half the area.
template <class T>
std::optional<StrategyOutcome<T>> halving_attack(const std::vector<Point<T>>& white, const Rect<T>& rect) {
  const std::size_t n = white.size();
  if (n == 0) return std::nullopt;
  const T target = rect.area() / T(static_cast<long>(2 * n));
  auto halves = white_halves(white, rect);
  struct Item {
    T area;
    std::size_t site;
    HalfId half;
  };
  std::vector<Item> vertical, horizontal;
  bool unequal = false;
  for (std::size_t i = 0; i < n; ++i) {
    vertical.push_back({halves[i][0], i, HalfId::Left});
    vertical.push_back({halves[i][1], i, HalfId::Right});
    horizontal.push_back({halves[i][2], i, HalfId::Top});
    horizontal.push_back({halves[i][3], i, HalfId::Bottom});
    for (const auto& v : halves[i]) unequal = unequal || !(v == target);
  }
  if (!unequal) return std::nullopt;
  auto by_area = [](const Item& a, const Item& b) {
    if (!(a.area == b.area)) return b.area < a.area;
    if (a.site != b.site) return a.site < b.site;
    return a.half < b.half;
  };
  std::sort(vertical.begin(), vertical.end(), by_area);
  std::sort(horizontal.begin(), horizontal.end(), by_area);
  const T half_area = rect.area() / 2;
  auto top_sum = [&](const std::vector<Item>& v) {
    T s{0};
    for (std::size_t i = 0; i < n; ++i) s += v[i].area;
    return s;
  };
  const std::vector<Item>& cls = target < vertical.front().area ? vertical : horizontal;
  const T delta = top_sum(cls) - half_area;
  if (sign_of(delta) <= 0) return std::nullopt;
  T eps = delta / T(static_cast<long>(2 * n));
  for (int attempt = 0; attempt < 24; ++attempt, eps /= 4) {
    StrategyOutcome<T> out;
    out.certificate = Certificate::HalvingAttack;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      try {
        out.black.push_back(steal_point(cls[i].site, cls[i].half, eps, white, rect).point);
      } catch (const GameError&) {
        ok = false;
      }
    }
    if (!ok) continue;
    GamePosition<T> pos{rect, white, out.black};
    try {
      out.score = score(pos);
    } catch (const GeometryError&) {
      continue;
    }
    if (half_area < out.score.black_area) return out;
  }
  return std::nullopt;
}

enum class Diagonal { NE, NW, SW, SE };
enum class Bias { Vertical, Horizontal };

/// w shifted diagonally by delta; the bias adds delta/1024 to one coordinate
/// so the bisector with w is vertical (Vertical) or horizontal (Horizontal).
template <class T>
Point<T> diagonal_shift_point(const Point<T>& w, const T& delta, Diagonal dir, Bias bias = Bias::Vertical) {
  if (sign_of(delta) <= 0) throw GameError("delta must be positive");
  const int sx = dir == Diagonal::NE || dir == Diagonal::SE ? 1 : -1;
  const int sy = dir == Diagonal::NE || dir == Diagonal::NW ? 1 : -1;
  const T eta = delta / 1024;
  T dx = delta, dy = delta;
  if (bias == Bias::Vertical) dx += eta; else dy += eta;
  return {sx > 0 ? T(w.x + dx) : T(w.x - dx), sy > 0 ? T(w.y + dy) : T(w.y - dy)};
}

template <class T>
struct CornerPoint {
  Point<T> nominal;      // distance 3d/2 from the top and left sides
  T nominal_area{};      // black cell plus half of the neutral zone: 2d^2 + d^2/4
  T nominal_cell{};      // black cell alone
  Point<T> certified;    // nearby non-degenerate point
  T certified_area{};    // its exact black cell, > 2d^2
  T d{};
};

/// Winning corner point against a square grid with at least 2 x 2 sites.
template <class T>
CornerPoint<T> grid_corner_winning_point(const std::vector<Point<T>>& white, const Rect<T>& rect) {
  auto g = detect_grid(white, rect);
  if (!g) throw GameError("white set is not a grid");
  const auto [a, b] = *g;
  if (a < 2 || b < 2) throw GameError("grid must be at least 2 x 2");
  if (!(rect.width / T(b) == rect.height / T(a))) throw GameError("grid is not square");
  CornerPoint<T> out;
  out.d = rect.height / T(2 * a);
  const T three_halves = out.d * 3 / 2;
  out.nominal = {three_halves, rect.height - three_halves};
  GamePosition<T> pos{rect, white, {out.nominal}};
  auto dg = game_diagram(pos);
  out.nominal_cell = dg.cell_area(white.size());
  out.nominal_area = out.nominal_cell + dg.neutral_area() / 2;
  const T eta = out.d / 1000;
  const T floor_area = 2 * out.d * out.d;
  std::optional<T> best;
  for (auto [dx, dy] : {std::pair{-1, 0}, std::pair{1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
    Point<T> c{out.nominal.x + T(dx) * eta, out.nominal.y + T(dy) * eta};
    T area = black_cell_area(white, c, rect);
    if (floor_area < area && (!best || *best < area)) {
      best = area;
      out.certified = c;
    }
  }
  if (!best) throw GameError("corner point could not be certified");
  out.certified_area = *best;
  return out;
}

/// Maximal black cell area for b at offset (x, y) right of and above the white
/// point w_slot of the 1 x n grid (0-based), with a white point on b's right.
/// Neutral area is half credited to Black when x = y.
template <class T>
T grid_black_area(const T& x, const T& y, int n, const Rect<T>& rect, int slot = 1) {
  if (n < 2) throw GameError("need at least two white points");
  if (slot < 0 || slot > n - 2) throw GameError("slot must have a white point on each side of b");
  const T wp = rect.width / T(2 * n);
  const T hp = rect.height / 2;
  if (sign_of(x) < 0 || sign_of(y) < 0 || wp < x || hp < y) throw GameError("offsets outside the grid cell");
  if (sign_of(x) == 0 && sign_of(y) == 0) throw GameError("placement coincides with a white point");
  const T base = rect.area() / T(2 * n);
  if (y < x) return base - y * y;
  if (x == y) return base - y * y - y * (wp - hp) / 2;
  T v = base - y * (wp - hp) - (3 * y * y + x * x) / 4;
  if (slot == 0) {
    // No white point beyond w_b: b also gains less behind it.
    const T g = y - x;
    v -= g / 2 * (hp - y) + g * g / 8;
  }
  return v;
}

/// The closed-form upper bound for the x <= y regime as printed, without the
/// end-slot term.
template <class T>
T grid_black_area_bound(const T& x, const T& y, int n, const Rect<T>& rect) {
  const T wp = rect.width / T(2 * n);
  const T hp = rect.height / 2;
  const T base = rect.area() / T(2 * n);
  if (y < x) return base - y * y;
  return base - y * (wp - hp) - (3 * y * y + x * x) / 4;
}

// ---------------------------------------------------------------------------
// Winning-point search

struct SearchParams {
  int lattice_per_unit = 64;   // lattice points per unit length
  int delta_ladder = 12;       // diagonal offsets clearance * 2^-k, k = 1..ladder
  int refine_top = 24;         // lattice candidates refined locally
  int refine_rounds = 24;
  int certify_top = 48;        // candidates evaluated exactly
  unsigned threads = 0;
};

template <class T>
struct WinningPointReport {
  std::optional<Point<T>> point;  // certified winner, if any
  T area{};                       // its exact cell area
  Point<T> best_candidate;        // best exactly evaluated candidate
  T best_area{};
  T target{};
  std::size_t candidates = 0;     // candidates screened
};

namespace detail {

inline double black_area_double(const std::vector<Point<double>>& white, const Point<double>& b, const Rect<double>& rect) {
  for (const auto& w : white)
    if (std::abs(w.x - b.x) < 1e-12 && std::abs(w.y - b.y) < 1e-12) return -1;
  GamePosition<double> pos{rect, white, {b}};
  try {
    return game_diagram(pos).cell_area(white.size());
  } catch (const std::exception&) {
    return -1;
  }
}

template <class F>
void parallel_for(std::size_t count, unsigned threads, F f) {
  unsigned nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  nt = static_cast<unsigned>(std::min<std::size_t>(nt, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      f(k);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

// Consecutive white points sharing a horizontal line.
template <class T>
std::vector<Point<T>> centre_line_midpoints(const std::vector<Point<T>>& white) {
  std::vector<Point<T>> out;
  const std::size_t n = white.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !(white[i].y == white[j].y) || !(white[i].x < white[j].x)) continue;
      bool adjacent = true;
      for (std::size_t k = 0; k < n; ++k)
        if (white[k].y == white[i].y && white[i].x < white[k].x && white[k].x < white[j].x) adjacent = false;
      if (adjacent) out.push_back({(white[i].x + white[j].x) / 2, white[i].y});
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Searches for b with exact area(V(b)) > area(rect)/(2n). Candidates from the
/// constructive arguments and a refined lattice are screened in double
/// precision; the best certify_top are then evaluated exactly. Ties are broken
/// by exact area, then point order.
template <class T>
WinningPointReport<T> find_winning_point(const std::vector<Point<T>>& white, const Rect<T>& rect,
                                         const SearchParams& sp = {}) {
  WinningPointReport<T> rep;
  const std::size_t n = white.size();
  if (n == 0) throw GameError("white set is empty");
  rep.target = rect.area() / T(static_cast<long>(2 * n));
  std::vector<Point<T>> cand;

  auto wd = white_diagram(white, rect);
  for (std::size_t i = 0; i < n; ++i) {
    auto a = arms(white[i], wd.cells[i], rect);
    for (auto dir : {Diagonal::NE, Diagonal::NW, Diagonal::SW, Diagonal::SE}) {
      const ArmDir hx = dir == Diagonal::NE || dir == Diagonal::SE ? ArmDir::Right : ArmDir::Left;
      const ArmDir hy = dir == Diagonal::NE || dir == Diagonal::NW ? ArmDir::Top : ArmDir::Bottom;
      const T clearance = min_of(a[hx], a[hy]);
      if (sign_of(clearance) <= 0) continue;
      T delta = clearance;
      for (int k = 1; k <= sp.delta_ladder; ++k) {
        delta /= 2;
        for (auto bias : {Bias::Vertical, Bias::Horizontal}) cand.push_back(diagonal_shift_point(white[i], delta, dir, bias));
      }
    }
  }
  if (auto g = detect_grid(white, rect);
      g && g->first >= 2 && g->second >= 2 && rect.width / T(g->second) == rect.height / T(g->first)) {
    cand.push_back(grid_corner_winning_point(white, rect).certified);
  }
  for (const auto& m : detail::centre_line_midpoints(white)) cand.push_back(m);

  std::vector<Point<double>> wdbl;
  for (const auto& w : white) wdbl.push_back(point_cast<double>(w));
  Rect<double> rdbl(to_double(rect.width), to_double(rect.height));
  auto approx = [&](const Point<T>& b) {
    if (!rect.contains(b) || std::find(white.begin(), white.end(), b) != white.end()) return -1.0;
    return detail::black_area_double(wdbl, point_cast<double>(b), rdbl);
  };

  // Lattice screen, then compass search from the best lattice points.
  const int nx = std::max(2, static_cast<int>(std::ceil(rdbl.width * sp.lattice_per_unit)));
  const int ny = std::max(2, static_cast<int>(std::ceil(rdbl.height * sp.lattice_per_unit)));
  auto lattice_point = [&](int ix, int iy) {
    return Point<T>{rect.width * T(2 * ix + 1) / T(2 * nx), rect.height * T(2 * iy + 1) / T(2 * ny)};
  };
  std::vector<std::pair<double, int>> scored(static_cast<std::size_t>(nx) * ny);
  detail::parallel_for(scored.size(), sp.threads, [&](std::size_t k) {
    const int ix = static_cast<int>(k) % nx, iy = static_cast<int>(k) / nx;
    scored[k] = {detail::black_area_double(wdbl, {rdbl.width * (ix + 0.5) / nx, rdbl.height * (iy + 0.5) / ny}, rdbl),
                 static_cast<int>(k)};
  });
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  const int top = std::min<int>(sp.refine_top, static_cast<int>(scored.size()));
  std::vector<Point<T>> refined(top);
  detail::parallel_for(static_cast<std::size_t>(top), sp.threads, [&](std::size_t t) {
    const int k = scored[t].second;
    Point<T> cur = lattice_point(k % nx, k / nx);
    double cur_area = approx(cur);
    T step = rect.width / T(2 * nx);
    for (int round = 0; round < sp.refine_rounds; ++round) {
      bool moved = false;
      for (auto [dx, dy] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}, std::pair{1, 1},
                            std::pair{-1, 1}, std::pair{1, -1}, std::pair{-1, -1}}) {
        Point<T> q{cur.x + T(dx) * step, cur.y + T(dy) * step};
        const double area = approx(q);
        if (area > cur_area) {
          cur = q;
          cur_area = area;
          moved = true;
        }
      }
      if (!moved) step /= 2;
    }
    refined[t] = cur;
  });
  for (int t = 0; t < top; ++t) {
    const int k = scored[t].second;
    cand.push_back(lattice_point(k % nx, k / nx));
    cand.push_back(refined[t]);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  rep.candidates = cand.size() + scored.size();

  std::vector<double> est(cand.size());
  detail::parallel_for(cand.size(), sp.threads, [&](std::size_t k) { est[k] = approx(cand[k]); });
  std::vector<std::size_t> order(cand.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return est[a] > est[b]; });
  const std::size_t certify = std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(1, sp.certify_top)));
  std::vector<std::optional<T>> exact(certify);
  detail::parallel_for(certify, sp.threads, [&](std::size_t t) {
    const auto& c = cand[order[t]];
    if (est[order[t]] < 0) return;
    try {
      exact[t] = black_cell_area(white, c, rect);
    } catch (const GeometryError&) {
    }
  });
  bool have = false;
  for (std::size_t t = 0; t < certify; ++t) {
    if (!exact[t]) continue;
    const auto& c = cand[order[t]];
    if (!have || rep.best_area < *exact[t] || (*exact[t] == rep.best_area && c < rep.best_candidate)) {
      have = true;
      rep.best_area = *exact[t];
      rep.best_candidate = c;
    }
  }
  if (have && rep.target < rep.best_area) {
    rep.point = rep.best_candidate;
    rep.area = rep.best_area;
  }
  return rep;
}

/// Adds n-1 steals of half cells disjoint from V(b) to a winning point b.
template <class T>
StrategyOutcome<T> complete_black_set(const std::vector<Point<T>>& white, const Point<T>& b, const T& surplus,
                                      const Rect<T>& rect) {
  const std::size_t n = white.size();
  StrategyOutcome<T> out;
  out.certificate = Certificate::WinningPointPlusSteals;
  out.black = {b};
  if (n <= 1) {
    out.score = score(GamePosition<T>{rect, white, out.black});
    return out;
  }
  if (sign_of(surplus) <= 0) throw GameError("surplus must be positive");
  GamePosition<T> single{rect, white, {b}};
  const Region<T> vb = game_diagram(single).cells[n];
  auto wd = white_diagram(white, rect);
  struct Pick {
    std::size_t site;
    HalfId half;
  };
  std::vector<Pick> picks;
  for (std::size_t i = 0; i < n && picks.size() + 1 < n; ++i) {
    auto h = half_cells(white[i], wd.cells[i]);
    for (auto id : {HalfId::Left, HalfId::Right, HalfId::Top, HalfId::Bottom}) {
      if (sign_of(h[id].area()) > 0 && sign_of(h[id].intersection(vb).area()) == 0) {
        picks.push_back({i, id});
        break;
      }
    }
  }
  if (picks.size() + 1 < n) throw std::logic_error("no half cell disjoint from the winning cell");
  T eps = surplus / T(static_cast<long>(2 * (n - 1)));
  const T half_area = rect.area() / 2;
  for (int attempt = 0; attempt < 24; ++attempt, eps /= 4) {
    out.black = {b};
    bool ok = true;
    for (const auto& p : picks) {
      try {
        out.black.push_back(steal_point(p.site, p.half, eps, white, rect).point);
      } catch (const GameError&) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    try {
      out.score = score(GamePosition<T>{rect, white, out.black});
    } catch (const GeometryError&) {
      continue;
    }
    if (half_area < out.score.black_area) return out;
  }
  throw std::logic_error("steals around the winning point did not certify");
}

/// Halving attack, else winning point plus steals, else the best tie attempt.
template <class T>
StrategyOutcome<T> black_best_response(const std::vector<Point<T>>& white, const Rect<T>& rect,
                                       const SearchParams& sp = {}) {
  if (white.empty()) throw GameError("white set is empty");
  if (auto h = halving_attack(white, rect)) return *h;
  auto wp = find_winning_point(white, rect, sp);
  if (wp.point) return complete_black_set(white, *wp.point, T(wp.area - wp.target), rect);

  // Best tie attempt: centre-line midpoints, then the best remaining candidate.
  const std::size_t n = white.size();
  StrategyOutcome<T> out;
  out.certificate = Certificate::BestTieAttempt;
  const auto pool = detail::centre_line_midpoints(white);
  for (const auto& p : pool) {
    if (out.black.size() < n) out.black.push_back(p);
  }
  if (out.black.size() < n && std::find(out.black.begin(), out.black.end(), wp.best_candidate) == out.black.end()) {
    out.black.push_back(wp.best_candidate);
  }
  // Fill any remaining slots next to white points.
  for (std::size_t i = 0; out.black.size() < n && i < n; ++i) {
    auto a = arms(white[i], white_diagram(white, rect).cells[i], rect);
    Point<T> c{white[i].x, white[i].y + a[ArmDir::Top] / 2};
    if (sign_of(a[ArmDir::Top]) == 0) c = {white[i].x, white[i].y - a[ArmDir::Bottom] / 2};
    if (std::find(out.black.begin(), out.black.end(), c) == out.black.end()) out.black.push_back(c);
  }
  out.score = score(GamePosition<T>{rect, white, out.black});
  return out;
}

}  // namespace mvg
