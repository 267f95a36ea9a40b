#pragma once
// Manhattan Voronoi diagrams in a rectangle, with positive-area neutral zones.
//
// The rectangle is cut by every site abscissa and ordinate into grid boxes.
// Inside one box every distance function is affine with gradient (+-1, +-1),
// so each cell piece is the box clipped by half-planes, and two sites whose
// affine forms coincide are the degenerate (2-D tie) case.

#include "mvg/bisector.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mvg {

enum class TiePolicy {
  NeutralZone,      // 2-D ties belong to nobody
  AwardHorizontal,  // 2-D ties broken as if |dy| weighed infinitesimally more
};

inline const char* to_string(TiePolicy t) {
  return t == TiePolicy::NeutralZone ? "neutral" : "award-horizontal";
}

/// Tie policy per site pair: pairs in the same group use `same`, others `cross`.
/// With no groups every pair uses `same`.
struct TieRule {
  TiePolicy same = TiePolicy::NeutralZone;
  TiePolicy cross = TiePolicy::NeutralZone;
  std::vector<int> group;

  static TieRule uniform(TiePolicy t) { return TieRule{t, t, {}}; }
  TiePolicy operator()(std::size_t i, std::size_t j) const {
    if (group.empty() || group[i] == group[j]) return same;
    return cross;
  }
};

template <class T>
struct Diagram {
  Rect<T> rect;
  std::vector<Point<T>> sites;
  std::vector<Region<T>> cells;
  Region<T> neutral;
  TieRule tie;

  T cell_area(std::size_t i) const { return cells[i].area(); }
  T neutral_area() const { return neutral.area(); }
  std::size_t size() const { return sites.size(); }
};

namespace detail {

template <class T>
struct Affine {
  int a;  // coefficient of x
  int b;  // coefficient of y
  T c;
  T at(const T& x, const T& y) const {
    T v = c;
    if (a > 0) v += x; else v -= x;
    if (b > 0) v += y; else v -= y;
    return v;
  }
  bool same_gradient(const Affine& o) const { return a == o.a && b == o.b; }
};

// L1 distance to s as an affine form valid on the box [x0,x1] x [y0,y1].
template <class T>
Affine<T> distance_form(const Point<T>& s, const T& x0, const T& y0) {
  // On the box, sign(x - s.x) is constant; x0 >= s.x means x - s.x >= 0.
  Affine<T> f;
  f.a = s.x < x0 || s.x == x0 ? 1 : -1;
  f.b = s.y < y0 || s.y == y0 ? 1 : -1;
  if (f.a > 0) f.c = -s.x; else f.c = s.x;
  if (f.b > 0) f.c -= s.y; else f.c += s.y;
  return f;
}

template <class T>
std::vector<T> sorted_breaks(std::vector<T> v, const T& hi) {
  v.push_back(T(0));
  v.push_back(hi);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<T> out;
  for (auto& t : v) {
    if (sign_of(t) < 0 || hi < t) continue;
    if (!out.empty() && sign_of(T(t - out.back())) == 0) continue;
    out.push_back(t);
  }
  return out;
}

// Under AwardHorizontal, does p beat q on a box where their forms coincide?
template <class T>
bool wins_horizontal(const Point<T>& p, const Point<T>& q, const T& cy) {
  return abs_of(T(cy - p.y)) < abs_of(T(cy - q.y));
}

}  // namespace detail

template <class T>
void validate_sites(const std::vector<Point<T>>& sites, const Rect<T>& rect) {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!rect.contains(sites[i])) throw GeometryError("site outside rectangle");
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      if (sites[i] == sites[j]) throw GeometryError("duplicate sites");
    }
  }
}

/// Builds the diagram. Cells are closures of the open dominance sets; the
/// neutral region collects every positive-area tie left unassigned.
template <class T>
Diagram<T> voronoi_diagram(const std::vector<Point<T>>& sites, const Rect<T>& rect, const TieRule& tie = {}) {
  validate_sites(sites, rect);
  if (!tie.group.empty() && tie.group.size() != sites.size()) {
    throw GeometryError("tie groups must match the site count");
  }
  Diagram<T> d;
  d.rect = rect;
  d.sites = sites;
  d.tie = tie;
  const std::size_t n = sites.size();
  std::vector<std::vector<Polygon<T>>> pieces(n);
  std::vector<Polygon<T>> neutral;
  if (n == 0) {
    neutral.push_back(Region<T>::of_rect(rect).pieces().front());
    d.cells.resize(0);
    d.neutral = Region<T>(std::move(neutral));
    return d;
  }

  std::vector<T> xs, ys;
  for (const auto& s : sites) {
    xs.push_back(s.x);
    ys.push_back(s.y);
  }
  xs = detail::sorted_breaks(std::move(xs), rect.width);
  ys = detail::sorted_breaks(std::move(ys), rect.height);

  std::vector<detail::Affine<T>> form(n);
  std::vector<T> lo(n), hi(n);
  std::vector<std::size_t> cand;
  for (std::size_t ix = 0; ix + 1 < xs.size(); ++ix) {
    const T& x0 = xs[ix];
    const T& x1 = xs[ix + 1];
    for (std::size_t iy = 0; iy + 1 < ys.size(); ++iy) {
      const T& y0 = ys[iy];
      const T& y1 = ys[iy + 1];
      const T cy = (y0 + y1) / 2;
      const Polygon<T> box{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};

      // Range of each distance over the box (affine, so attained at corners).
      std::optional<T> best_max;
      for (std::size_t s = 0; s < n; ++s) {
        form[s] = detail::distance_form(sites[s], x0, y0);
        const auto& f = form[s];
        const T& xl = f.a > 0 ? x0 : x1;
        const T& xh = f.a > 0 ? x1 : x0;
        const T& yl = f.b > 0 ? y0 : y1;
        const T& yh = f.b > 0 ? y1 : y0;
        lo[s] = f.at(xl, yl);
        hi[s] = f.at(xh, yh);
        if (!best_max || hi[s] < *best_max) best_max = hi[s];
      }
      cand.clear();
      for (std::size_t s = 0; s < n; ++s) {
        if (!(*best_max < lo[s])) cand.push_back(s);
      }

      // Cell pieces.
      for (std::size_t p : cand) {
        Polygon<T> poly = box;
        for (std::size_t q : cand) {
          if (q == p || poly.empty()) continue;
          if (hi[p] < lo[q]) continue;
          if (hi[q] < lo[p]) {
            poly.clear();
            break;
          }
          const auto& fp = form[p];
          const auto& fq = form[q];
          if (fp.same_gradient(fq)) {
            int s = sign_of(T(fp.c - fq.c));
            if (s < 0) continue;
            if (s > 0) {
              poly.clear();
              break;
            }
            if (tie(p, q) == TiePolicy::AwardHorizontal && detail::wins_horizontal(sites[p], sites[q], cy)) continue;
            poly.clear();
            break;
          }
          // fp - fq <= 0
          T a(fp.a - fq.a);
          T b(fp.b - fq.b);
          T c(fq.c - fp.c);
          poly = clip_halfplane(poly, a, b, c);
        }
        if (!poly.empty()) pieces[p].push_back(std::move(poly));
      }

      // Neutral pieces: a class of sites sharing one affine form, where the
      // class is nearest and no member beats all the others.
      std::vector<bool> done(n, false);
      for (std::size_t i = 0; i < cand.size(); ++i) {
        const std::size_t p = cand[i];
        if (done[p]) continue;
        std::vector<std::size_t> cls{p};
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
          const std::size_t q = cand[j];
          if (!done[q] && form[p].same_gradient(form[q]) && sign_of(T(form[p].c - form[q].c)) == 0) cls.push_back(q);
        }
        for (auto s : cls) done[s] = true;
        if (cls.size() < 2) continue;
        bool has_winner = false;
        for (auto w : cls) {
          bool beats_all = true;
          for (auto o : cls) {
            if (o == w) continue;
            if (tie(w, o) != TiePolicy::AwardHorizontal || !detail::wins_horizontal(sites[w], sites[o], cy)) {
              beats_all = false;
              break;
            }
          }
          if (beats_all) {
            has_winner = true;
            break;
          }
        }
        if (has_winner) continue;
        Polygon<T> poly = box;
        for (std::size_t q : cand) {
          if (poly.empty()) break;
          if (std::find(cls.begin(), cls.end(), q) != cls.end()) continue;
          const auto& fp = form[p];
          const auto& fq = form[q];
          if (hi[p] < lo[q]) continue;
          if (fp.same_gradient(fq)) {
            if (fp.c < fq.c) continue;
            poly.clear();
            break;
          }
          poly = clip_halfplane(poly, T(fp.a - fq.a), T(fp.b - fq.b), T(fq.c - fp.c));
        }
        if (!poly.empty()) neutral.push_back(std::move(poly));
      }
    }
  }
  d.cells.reserve(n);
  for (auto& v : pieces) d.cells.emplace_back(std::move(v));
  d.neutral = Region<T>(std::move(neutral));
  return d;
}

template <class T>
Diagram<T> voronoi_diagram(const std::vector<Point<T>>& sites, const Rect<T>& rect, TiePolicy tie) {
  return voronoi_diagram(sites, rect, TieRule::uniform(tie));
}

/// Cell of sites[i] only (same semantics as the full diagram).
template <class T>
Region<T> cell_of(std::size_t i, const std::vector<Point<T>>& sites, const Rect<T>& rect, const TieRule& tie = {}) {
  return voronoi_diagram(sites, rect, tie).cells.at(i);
}

/// Closure of {z in rect : d(z,p) < d(z,q)}, with 2-D ties resolved by `tie`.
template <class T>
Region<T> dominance_region(const Point<T>& p, const Point<T>& q, const Rect<T>& rect, TiePolicy tie) {
  require_distinct(p, q);
  return voronoi_diagram(std::vector<Point<T>>{p, q}, rect, tie).cells[0];
}

enum class HalfId { Left = 0, Right = 1, Top = 2, Bottom = 3 };

inline const char* to_string(HalfId h) {
  switch (h) {
    case HalfId::Left: return "left";
    case HalfId::Right: return "right";
    case HalfId::Top: return "top";
    case HalfId::Bottom: return "bottom";
  }
  return "?";
}

template <class T>
struct HalfCells {
  Region<T> left, right, top, bottom;
  const Region<T>& operator[](HalfId h) const {
    switch (h) {
      case HalfId::Left: return left;
      case HalfId::Right: return right;
      case HalfId::Top: return top;
      default: return bottom;
    }
  }
};

template <class T>
void require_in_cell(const Point<T>& p, const Region<T>& cell) {
  if (!cell.contains(p)) throw GeometryError("site outside its cell");
}

template <class T>
HalfCells<T> half_cells(const Point<T>& p, const Region<T>& cell) {
  require_in_cell(p, cell);
  return {cell.left_of(p.x), cell.right_of(p.x), cell.above(p.y), cell.below(p.y)};
}

/// Quarter cells C1..C4: upper-right, upper-left, lower-left, lower-right.
template <class T>
std::array<Region<T>, 4> quarter_cells(const Point<T>& p, const Region<T>& cell) {
  require_in_cell(p, cell);
  auto up = cell.above(p.y);
  auto down = cell.below(p.y);
  return {up.right_of(p.x), up.left_of(p.x), down.left_of(p.x), down.right_of(p.x)};
}

enum class ArmDir { Left = 0, Right = 1, Top = 2, Bottom = 3 };

template <class T>
struct ArmInfo {
  std::array<T, 4> length{};      // indexed by ArmDir
  std::array<bool, 4> boundary{};  // endpoint on the rectangle boundary

  const T& operator[](ArmDir d) const { return length[static_cast<int>(d)]; }
  bool on_boundary(ArmDir d) const { return boundary[static_cast<int>(d)]; }
  bool is_bridge() const { return (boundary[0] && boundary[1]) || (boundary[2] && boundary[3]); }
  int boundary_count() const { return boundary[0] + boundary[1] + boundary[2] + boundary[3]; }
};

template <class T>
ArmInfo<T> arms(const Point<T>& p, const Region<T>& cell, const Rect<T>& rect) {
  require_in_cell(p, cell);
  constexpr std::array<std::array<int, 2>, 4> dirs{{{-1, 0}, {1, 0}, {0, 1}, {0, -1}}};
  ArmInfo<T> info;
  for (int k = 0; k < 4; ++k) {
    std::vector<std::pair<T, T>> spans;
    for (const auto& piece : cell.pieces()) {
      if (auto iv = ray_interval(piece, p, dirs[k][0], dirs[k][1])) spans.push_back(*iv);
    }
    std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    T reach{0};
    for (const auto& [a, b] : spans) {
      if (reach < a) break;
      if (reach < b) reach = b;
    }
    info.length[k] = reach;
    Point<T> end{p.x + T(dirs[k][0]) * reach, p.y + T(dirs[k][1]) * reach};
    info.boundary[k] = rect.on_boundary(end) &&
                       ((k == 0 && sign_of(end.x) == 0) || (k == 1 && end.x == rect.width) ||
                        (k == 2 && end.y == rect.height) || (k == 3 && sign_of(end.y) == 0));
  }
  return info;
}

/// Closed octants O1..O8 of p that contain q, counter-clockwise from +x.
template <class T>
std::vector<int> octant_index(const Point<T>& p, const Point<T>& q) {
  require_distinct(p, q);
  const T dx = q.x - p.x;
  const T dy = q.y - p.y;
  const T ax = abs_of(dx);
  const T ay = abs_of(dy);
  std::vector<int> out;
  // Octant k spans angles [(k-1)*45, k*45] degrees.
  auto in = [&](int k) {
    const int sx = sign_of(dx), sy = sign_of(dy);
    switch (k) {
      case 1: return sx > 0 && sy >= 0 && !(ax < ay);
      case 2: return sy > 0 && sx >= 0 && !(ay < ax);
      case 3: return sy > 0 && sx <= 0 && !(ay < ax);
      case 4: return sx < 0 && sy >= 0 && !(ax < ay);
      case 5: return sx < 0 && sy <= 0 && !(ax < ay);
      case 6: return sy < 0 && sx <= 0 && !(ay < ax);
      case 7: return sy < 0 && sx >= 0 && !(ay < ax);
      case 8: return sx > 0 && sy <= 0 && !(ax < ay);
    }
    return false;
  };
  for (int k = 1; k <= 8; ++k) {
    if (in(k)) out.push_back(k);
  }
  return out;
}

}  // namespace mvg
