#pragma once
// L1 bisectors: classification and clipped geometry.

#include "mvg/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mvg {

enum class BisectorKind { VerticalStaircase, HorizontalStaircase, StraightVertical, StraightHorizontal, Degenerate };

inline const char* to_string(BisectorKind k) {
  switch (k) {
    case BisectorKind::VerticalStaircase: return "VerticalStaircase";
    case BisectorKind::HorizontalStaircase: return "HorizontalStaircase";
    case BisectorKind::StraightVertical: return "StraightVertical";
    case BisectorKind::StraightHorizontal: return "StraightHorizontal";
    case BisectorKind::Degenerate: return "Degenerate";
  }
  return "?";
}

template <class T>
struct Segment {
  Point<T> a;
  Point<T> b;
  friend bool operator==(const Segment& s, const Segment& t) { return s.a == t.a && s.b == t.b; }
};

template <class T>
struct Bisector {
  BisectorKind kind{};
  std::vector<Segment<T>> polyline;  // ordered by increasing y (vertical kinds) or x
  std::vector<Region<T>> degenerate_regions;
  // True when built without a rectangle: terminal segments are then cut at a
  // finite frame and continue to infinity.
  bool unbounded = false;
};

template <class T>
void require_distinct(const Point<T>& p, const Point<T>& q) {
  if (p == q) throw GeometryError("coincident points");
}

template <class T>
BisectorKind classify_bisector(const Point<T>& p, const Point<T>& q) {
  require_distinct(p, q);
  T dx = abs_of(T(p.x - q.x));
  T dy = abs_of(T(p.y - q.y));
  if (dx == dy) return BisectorKind::Degenerate;
  if (sign_of(dy) == 0) return BisectorKind::StraightVertical;
  if (sign_of(dx) == 0) return BisectorKind::StraightHorizontal;
  return dy < dx ? BisectorKind::VerticalStaircase : BisectorKind::HorizontalStaircase;
}

namespace detail {

// Liang-Barsky against an axis box; returns nullopt for empty or point results.
template <class T>
std::optional<Segment<T>> clip_segment(const Segment<T>& s, const Box<T>& box) {
  T t0{0}, t1{1};
  const T dx = s.b.x - s.a.x;
  const T dy = s.b.y - s.a.y;
  auto edge = [&](const T& p, const T& q) {
    // p * t <= q
    int sp = sign_of(p);
    if (sp == 0) return sign_of(q) >= 0;
    T r = q / p;
    if (sp < 0) {
      if (t1 < r) return false;
      if (t0 < r) t0 = r;
    } else {
      if (r < t0) return false;
      if (r < t1) t1 = r;
    }
    return true;
  };
  if (!edge(T(-dx), T(s.a.x - box.x0))) return std::nullopt;
  if (!edge(dx, T(box.x1 - s.a.x))) return std::nullopt;
  if (!edge(T(-dy), T(s.a.y - box.y0))) return std::nullopt;
  if (!edge(dy, T(box.y1 - s.a.y))) return std::nullopt;
  if (!(t0 < t1)) return std::nullopt;
  Segment<T> out{{s.a.x + t0 * dx, s.a.y + t0 * dy}, {s.a.x + t1 * dx, s.a.y + t1 * dy}};
  if (out.a == out.b) return std::nullopt;
  return out;
}

template <class T>
Point<T> swap_xy(const Point<T>& p) {
  return {p.y, p.x};
}

// Unclipped polyline of a vertical-family bisector (dx > dy, p.x < q.x),
// ordered by increasing y, cut at y0 and y1.
template <class T>
std::vector<Segment<T>> vertical_polyline(const Point<T>& p, const Point<T>& q, const T& y0, const T& y1) {
  const T ylo = min_of(p.y, q.y);
  const T yhi = max_of(p.y, q.y);
  const T below = (p.x + q.x + q.y - p.y) / 2;
  const T above = (p.x + q.x - q.y + p.y) / 2;
  std::vector<Segment<T>> out;
  if (ylo == yhi) {
    out.push_back({{below, y0}, {below, y1}});
    return out;
  }
  out.push_back({{below, y0}, {below, ylo}});
  out.push_back({{below, ylo}, {above, yhi}});
  out.push_back({{above, yhi}, {above, y1}});
  return out;
}

}  // namespace detail

/// Bisector clipped to rect, or to a frame around p and q when rect is empty.
template <class T>
Bisector<T> bisector_geometry(Point<T> p, Point<T> q, const std::optional<Rect<T>>& rect = std::nullopt) {
  require_distinct(p, q);
  if (q < p) std::swap(p, q);
  Bisector<T> out;
  out.kind = classify_bisector(p, q);
  out.unbounded = !rect.has_value();

  Box<T> frame;
  if (rect) {
    frame = {T(0), T(0), rect->width, rect->height};
  } else {
    T span = max_of(abs_of(T(p.x - q.x)), abs_of(T(p.y - q.y))) + 1;
    frame = {min_of(p.x, q.x) - span, min_of(p.y, q.y) - span, max_of(p.x, q.x) + span, max_of(p.y, q.y) + span};
  }

  std::vector<Segment<T>> raw;
  switch (out.kind) {
    case BisectorKind::VerticalStaircase:
    case BisectorKind::StraightVertical:
      raw = detail::vertical_polyline(p, q, frame.y0, frame.y1);
      break;
    case BisectorKind::HorizontalStaircase:
    case BisectorKind::StraightHorizontal: {
      Point<T> ps = detail::swap_xy(p), qs = detail::swap_xy(q);
      if (qs < ps) std::swap(ps, qs);
      for (auto& s : detail::vertical_polyline(ps, qs, frame.x0, frame.x1)) {
        raw.push_back({detail::swap_xy(s.a), detail::swap_xy(s.b)});
      }
      break;
    }
    case BisectorKind::Degenerate: {
      // p is left of q after canonical ordering.
      raw.push_back({{q.x, p.y}, {p.x, q.y}});
      if (raw.back().b < raw.back().a) std::swap(raw.back().a, raw.back().b);
      Region<T> frame_region = Region<T>::box(frame.x0, frame.y0, frame.x1, frame.y1);
      if (p.y < q.y) {
        out.degenerate_regions.push_back(frame_region.left_of(p.x).above(q.y));
        out.degenerate_regions.push_back(frame_region.right_of(q.x).below(p.y));
      } else {
        out.degenerate_regions.push_back(frame_region.left_of(p.x).below(q.y));
        out.degenerate_regions.push_back(frame_region.right_of(q.x).above(p.y));
      }
      break;
    }
  }
  for (const auto& s : raw) {
    if (auto c = detail::clip_segment(s, frame)) out.polyline.push_back(*c);
  }
  return out;
}

template <class T>
Bisector<T> bisector_geometry(const Point<T>& p, const Point<T>& q, const Rect<T>& rect) {
  return bisector_geometry(p, q, std::optional<Rect<T>>(rect));
}

}  // namespace mvg
