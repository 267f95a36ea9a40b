#pragma once
// Points, rectangles and regions for rectilinear-plus-diagonal geometry.
//
// A Region is stored as a set of interior-disjoint closed convex pieces. The
// Voronoi construction produces pieces naturally (one per arrangement cell),
// and half-plane clipping of convex pieces stays exact under rational
// arithmetic. The boundary of a region is recovered on demand by outline().

#include "mvg/scalar.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mvg {

template <class T>
struct Point {
  T x{};
  T y{};

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.x < b.x) return true;
    if (b.x < a.x) return false;
    return a.y < b.y;
  }
};

template <class T>
Point<T> make_point(const T& x, const T& y) {
  return Point<T>{x, y};
}

template <class U, class T>
Point<U> point_cast(const Point<T>& p) {
  if constexpr (std::is_same_v<U, T>) {
    return p;
  } else if constexpr (std::is_same_v<U, double>) {
    return Point<double>{to_double(p.x), to_double(p.y)};
  } else {
    return Point<U>{scalar_traits<U>::from_double(to_double(p.x)),
                    scalar_traits<U>::from_double(to_double(p.y))};
  }
}

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Axis-aligned playing field [0, width] x [0, height].
template <class T>
struct Rect {
  T width{1};
  T height{1};

  Rect() = default;
  Rect(T w, T h) : width(std::move(w)), height(std::move(h)) {
    if (sign_of(width) <= 0 || sign_of(height) <= 0) {
      throw GeometryError("rectangle dimensions must be positive");
    }
  }

  T area() const { return width * height; }
  /// Aspect ratio max/min (>= 1).
  T aspect() const { return width < height ? T(height / width) : T(width / height); }
  bool contains(const Point<T>& p) const {
    return sign_of(p.x) >= 0 && sign_of(p.y) >= 0 && !(width < p.x) && !(height < p.y);
  }
  bool on_boundary(const Point<T>& p) const {
    return contains(p) && (sign_of(p.x) == 0 || sign_of(p.y) == 0 || p.x == width || p.y == height);
  }
  friend bool operator==(const Rect& a, const Rect& b) {
    return a.width == b.width && a.height == b.height;
  }
};

template <class T>
T manhattan_distance(const Point<T>& p, const Point<T>& q) {
  return abs_of(T(p.x - q.x)) + abs_of(T(p.y - q.y));
}

template <class T>
using Polygon = std::vector<Point<T>>;

template <class T>
T signed_area(const Polygon<T>& poly) {
  T twice{0};
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % m];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2;
}

template <class T>
T cross(const Point<T>& o, const Point<T>& a, const Point<T>& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

namespace detail {

template <class T>
void drop_repeats(Polygon<T>& poly) {
  Polygon<T> out;
  out.reserve(poly.size());
  for (auto& p : poly) {
    if (out.empty() || !(out.back() == p)) out.push_back(std::move(p));
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  poly.swap(out);
}

template <class T>
bool on_segment(const Point<T>& a, const Point<T>& b, const Point<T>& p) {
  if (sign_of(cross(a, b, p)) != 0) return false;
  return !(p.x < min_of(a.x, b.x)) && !(max_of(a.x, b.x) < p.x) && !(p.y < min_of(a.y, b.y)) &&
         !(max_of(a.y, b.y) < p.y);
}

template <class T>
int orient(const Point<T>& a, const Point<T>& b, const Point<T>& c) {
  return sign_of(cross(a, b, c));
}

template <class T>
bool segments_intersect(const Point<T>& a, const Point<T>& b, const Point<T>& c, const Point<T>& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
    if (o1 != 0 || o2 != 0 || o3 != 0 || o4 != 0) return true;
  }
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace detail

/// Keeps the part of a convex polygon where a*x + b*y <= c.
template <class T>
Polygon<T> clip_halfplane(const Polygon<T>& poly, const T& a, const T& b, const T& c) {
  Polygon<T> out;
  const std::size_t m = poly.size();
  if (m == 0) return out;
  out.reserve(m + 2);
  std::vector<T> f;
  f.reserve(m);
  bool all_in = true;
  bool all_out = true;
  for (const auto& p : poly) {
    T v = a * p.x + b * p.y - c;
    int s = sign_of(v);
    all_in = all_in && s <= 0;
    all_out = all_out && s > 0;
    f.push_back(std::move(v));
  }
  if (all_in) return poly;
  if (all_out) return out;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    const int si = sign_of(f[i]);
    const int sj = sign_of(f[j]);
    if (si <= 0) out.push_back(poly[i]);
    if ((si < 0 && sj > 0) || (si > 0 && sj < 0)) {
      T t = f[i] / (f[i] - f[j]);
      out.push_back(Point<T>{poly[i].x + t * (poly[j].x - poly[i].x), poly[i].y + t * (poly[j].y - poly[i].y)});
    }
  }
  detail::drop_repeats(out);
  if (out.size() < 3 || sign_of(signed_area(out)) == 0) out.clear();
  return out;
}

/// Intersection of two convex counter-clockwise polygons.
template <class T>
Polygon<T> clip_convex(Polygon<T> subject, const Polygon<T>& clipper) {
  const std::size_t m = clipper.size();
  for (std::size_t i = 0; i < m && !subject.empty(); ++i) {
    const auto& u = clipper[i];
    const auto& v = clipper[(i + 1) % m];
    T a = v.y - u.y;
    T b = u.x - v.x;
    T c = a * u.x + b * u.y;
    subject = clip_halfplane(subject, a, b, c);
  }
  return subject;
}

/// Area of a simple polygon given by its boundary (either orientation).
/// Throws GeometryError on self-intersecting input.
template <class T>
T region_area(const Polygon<T>& boundary, const std::vector<Polygon<T>>& holes = {}) {
  auto check_simple = [](const Polygon<T>& poly) {
    const std::size_t m = poly.size();
    if (m < 3) throw GeometryError("polygon needs at least three vertices");
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (poly[i] == poly[j]) throw GeometryError("polygon vertices must be pairwise distinct");
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const bool adjacent = j == i + 1 || (i == 0 && j == m - 1);
        if (adjacent) continue;
        if (detail::segments_intersect(poly[i], poly[(i + 1) % m], poly[j], poly[(j + 1) % m])) {
          throw GeometryError("polygon is self-intersecting");
        }
      }
    }
  };
  check_simple(boundary);
  T total = abs_of(signed_area(boundary));
  for (const auto& h : holes) {
    check_simple(h);
    total -= abs_of(signed_area(h));
  }
  return total;
}

/// True iff the edge u->v has slope 0, infinity, +1 or -1.
template <class T>
bool is_l1_edge(const Point<T>& u, const Point<T>& v) {
  T dx = v.x - u.x;
  T dy = v.y - u.y;
  return sign_of(dx) == 0 || sign_of(dy) == 0 || abs_of(dx) == abs_of(dy);
}

template <class T>
struct Box {
  T x0, y0, x1, y1;
  bool overlaps(const Box& o) const { return !(x1 < o.x0 || o.x1 < x0 || y1 < o.y0 || o.y1 < y0); }
};

template <class T>
Box<T> bounding_box(const Polygon<T>& poly) {
  Box<T> b{poly.front().x, poly.front().y, poly.front().x, poly.front().y};
  for (const auto& p : poly) {
    if (p.x < b.x0) b.x0 = p.x;
    if (b.x1 < p.x) b.x1 = p.x;
    if (p.y < b.y0) b.y0 = p.y;
    if (b.y1 < p.y) b.y1 = p.y;
  }
  return b;
}

/// Closed interval [lo, hi] of ray parameters t >= 0 for which
/// origin + t * dir lies in the convex polygon; dir is an axis unit vector.
template <class T>
std::optional<std::pair<T, T>> ray_interval(const Polygon<T>& poly, const Point<T>& origin, int dx, int dy) {
  std::vector<T> hits;
  const std::size_t m = poly.size();
  const bool horizontal = dy == 0;
  const T& fixed = horizontal ? origin.y : origin.x;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& u = poly[i];
    const auto& v = poly[(i + 1) % m];
    const T& uf = horizontal ? u.y : u.x;
    const T& vf = horizontal ? v.y : v.x;
    const T& uo = horizontal ? u.x : u.y;
    const T& vo = horizontal ? v.x : v.y;
    int su = sign_of(T(uf - fixed));
    int sv = sign_of(T(vf - fixed));
    if (su == 0) hits.push_back(uo);
    if (sv == 0) hits.push_back(vo);
    if (su * sv < 0) {
      T t = (fixed - uf) / (vf - uf);
      hits.push_back(uo + t * (vo - uo));
    }
  }
  if (hits.empty()) return std::nullopt;
  T lo = hits.front(), hi = hits.front();
  for (const auto& h : hits) {
    if (h < lo) lo = h;
    if (hi < h) hi = h;
  }
  const T& o = horizontal ? origin.x : origin.y;
  const int d = horizontal ? dx : dy;
  // Map coordinate interval to ray parameters.
  T t0 = d > 0 ? T(lo - o) : T(o - hi);
  T t1 = d > 0 ? T(hi - o) : T(o - lo);
  if (sign_of(t1) < 0) return std::nullopt;
  if (sign_of(t0) < 0) t0 = 0;
  return std::make_pair(t0, t1);
}

template <class T>
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Polygon<T>> pieces) {
    pieces_.reserve(pieces.size());
    for (auto& p : pieces) {
      detail::drop_repeats(p);
      if (p.size() < 3) continue;
      T a = signed_area(p);
      if (sign_of(a) == 0) continue;
      if (sign_of(a) < 0) std::reverse(p.begin(), p.end());
      pieces_.push_back(std::move(p));
    }
  }

  static Region box(const T& x0, const T& y0, const T& x1, const T& y1) {
    if (!(x0 < x1) || !(y0 < y1)) return Region{};
    return Region({Polygon<T>{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}});
  }
  static Region of_rect(const Rect<T>& r) { return box(T(0), T(0), r.width, r.height); }

  const std::vector<Polygon<T>>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  T area() const {
    T a{0};
    for (const auto& p : pieces_) a += signed_area(p);
    return a;
  }

  void append(const Region& other) {
    pieces_.insert(pieces_.end(), other.pieces_.begin(), other.pieces_.end());
  }
  void append_piece(Polygon<T> piece) {
    detail::drop_repeats(piece);
    if (piece.size() >= 3 && sign_of(signed_area(piece)) > 0) pieces_.push_back(std::move(piece));
  }

  /// Part of the region where a*x + b*y <= c.
  Region clipped(const T& a, const T& b, const T& c) const {
    Region out;
    for (const auto& p : pieces_) {
      auto q = clip_halfplane(p, a, b, c);
      if (!q.empty()) out.pieces_.push_back(std::move(q));
    }
    return out;
  }

  Region left_of(const T& x) const { return clipped(T(1), T(0), x); }
  Region right_of(const T& x) const { return clipped(T(-1), T(0), T(-x)); }
  Region below(const T& y) const { return clipped(T(0), T(1), y); }
  Region above(const T& y) const { return clipped(T(0), T(-1), T(-y)); }

  Region intersection(const Region& other) const {
    Region out;
    for (const auto& a : pieces_) {
      const auto ba = bounding_box(a);
      for (const auto& b : other.pieces_) {
        if (!ba.overlaps(bounding_box(b))) continue;
        auto q = clip_convex(a, b);
        if (!q.empty()) out.pieces_.push_back(std::move(q));
      }
    }
    return out;
  }

  Region translated(const T& dx, const T& dy) const {
    Region out = *this;
    for (auto& p : out.pieces_)
      for (auto& v : p) {
        v.x += dx;
        v.y += dy;
      }
    return out;
  }

  /// Applies an affine map that is a symmetry of the axis directions:
  /// x' = sx * x + tx, y' = sy * y + ty with sx, sy in {+1, -1}.
  Region reflected(int sx, const T& tx, int sy, const T& ty) const {
    Region out;
    for (const auto& p : pieces_) {
      Polygon<T> q;
      q.reserve(p.size());
      for (const auto& v : p) q.push_back({sx > 0 ? T(v.x + tx) : T(tx - v.x), sy > 0 ? T(v.y + ty) : T(ty - v.y)});
      out.append_piece(std::move(q));
      if (!out.pieces_.empty() && sign_of(signed_area(out.pieces_.back())) < 0) {
        std::reverse(out.pieces_.back().begin(), out.pieces_.back().end());
      }
    }
    return out;
  }

  /// Closed-set membership.
  bool contains(const Point<T>& z) const {
    for (const auto& p : pieces_) {
      bool inside = true;
      const std::size_t m = p.size();
      for (std::size_t i = 0; i < m && inside; ++i) {
        if (sign_of(cross(p[i], p[(i + 1) % m], z)) < 0) inside = false;
      }
      if (inside) return true;
    }
    return false;
  }

  std::optional<Box<T>> bounds() const {
    if (pieces_.empty()) return std::nullopt;
    Box<T> b = bounding_box(pieces_.front());
    for (const auto& p : pieces_) {
      auto c = bounding_box(p);
      if (c.x0 < b.x0) b.x0 = c.x0;
      if (c.y0 < b.y0) b.y0 = c.y0;
      if (b.x1 < c.x1) b.x1 = c.x1;
      if (b.y1 < c.y1) b.y1 = c.y1;
    }
    return b;
  }

  /// Boundary loops of the union of the pieces. Outer loops are
  /// counter-clockwise, holes clockwise. Collinear vertices are removed.
  std::vector<Polygon<T>> outline() const;

 private:
  std::vector<Polygon<T>> pieces_;
};

template <class T>
std::vector<Polygon<T>> Region<T>::outline() const {
  using P = Point<T>;
  std::vector<P> verts;
  for (const auto& p : pieces_) verts.insert(verts.end(), p.begin(), p.end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  // Directed edges, split at every vertex lying in their interior so that
  // shared boundaries with T-junctions cancel exactly.
  std::map<std::pair<P, P>, int> edges;
  for (const auto& poly : pieces_) {
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
      const P& u = poly[i];
      const P& v = poly[(i + 1) % m];
      Box<T> eb{min_of(u.x, v.x), min_of(u.y, v.y), max_of(u.x, v.x), max_of(u.y, v.y)};
      auto lo = std::lower_bound(verts.begin(), verts.end(), P{eb.x0, eb.y0});
      std::vector<P> inner;
      for (auto it = lo; it != verts.end() && !(eb.x1 < it->x); ++it) {
        const P& w = *it;
        if (w == u || w == v) continue;
        if (w.y < eb.y0 || eb.y1 < w.y) continue;
        if (sign_of(cross(u, v, w)) != 0) continue;
        inner.push_back(w);
      }
      // Order along u->v.
      const bool forward_x = u.x < v.x || (u.x == v.x && u.y < v.y);
      std::sort(inner.begin(), inner.end());
      if (!forward_x) std::reverse(inner.begin(), inner.end());
      P prev = u;
      for (const auto& w : inner) {
        edges[{prev, w}] += 1;
        prev = w;
      }
      edges[{prev, v}] += 1;
    }
  }
  // Cancel opposite pairs.
  std::multimap<P, P> out_edges;
  for (auto& [key, count] : edges) {
    if (count <= 0) continue;
    auto rev = edges.find({key.second, key.first});
    if (rev != edges.end() && rev->second > 0) {
      int k = std::min(count, rev->second);
      count -= k;
      rev->second -= k;
    }
  }
  for (const auto& [key, count] : edges) {
    for (int i = 0; i < count; ++i) out_edges.emplace(key.first, key.second);
  }

  std::vector<Polygon<T>> loops;
  while (!out_edges.empty()) {
    auto start_it = out_edges.begin();
    P start = start_it->first;
    P cur = start_it->second;
    Polygon<T> loop{start};
    out_edges.erase(start_it);
    P prev = start;
    while (!(cur == start)) {
      loop.push_back(cur);
      auto range = out_edges.equal_range(cur);
      if (range.first == range.second) break;  // open chain; should not happen
      auto best = range.first;
      if (std::next(range.first) != range.second) {
        // Several outgoing edges at a pinch vertex: take the rightmost turn.
        for (auto it = std::next(range.first); it != range.second; ++it) {
          const P& a = best->second;
          const P& b = it->second;
          // Compare turning: prefer b if it is clockwise from a w.r.t. incoming direction.
          T ca = cross(prev, cur, a);
          T cb = cross(prev, cur, b);
          auto side = [](const T& c) { return sign_of(c); };
          int sa = side(ca), sb = side(cb);
          bool prefer_b;
          if (sa != sb) {
            prefer_b = sb < sa;
          } else {
            prefer_b = sign_of(cross(cur, a, b)) < 0;
          }
          if (prefer_b) best = it;
        }
      }
      P next = best->second;
      out_edges.erase(best);
      prev = cur;
      cur = next;
    }
    // Remove collinear vertices.
    bool changed = true;
    while (changed && loop.size() > 3) {
      changed = false;
      for (std::size_t i = 0; i < loop.size(); ++i) {
        const P& a = loop[(i + loop.size() - 1) % loop.size()];
        const P& b = loop[i];
        const P& c = loop[(i + 1) % loop.size()];
        if (sign_of(cross(a, b, c)) == 0) {
          loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
    if (loop.size() >= 3) loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace mvg
