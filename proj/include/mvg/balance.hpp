#pragma once
// Balanced configurations: audits, grids, atomic blocks and their composition.

#include "mvg/atomic_data.hpp"
#include "mvg/diagram.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvg {

template <class T>
struct Configuration {
  Rect<T> rect;
  std::vector<Point<T>> points;

  std::size_t size() const { return points.size(); }
};

template <class T>
struct BalanceReport {
  std::vector<std::array<T, 4>> halves;  // left, right, top, bottom per site
  std::vector<T> cell_areas;
  T target{};
  T neutral_area{};
  T worst_deviation{};
  bool is_balanced = false;
};

/// Opposite quarter cells equal in area.
template <class T>
bool is_locally_optimal(const Point<T>& p, const Region<T>& cell) {
  auto q = quarter_cells(p, cell);
  return q[0].area() == q[2].area() && q[1].area() == q[3].area();
}

/// All four half cells equal in area.
template <class T>
bool has_equal_halves(const Point<T>& p, const Region<T>& cell) {
  auto h = half_cells(p, cell);
  const T l = h.left.area();
  return h.right.area() == l && h.top.area() == l && h.bottom.area() == l;
}

template <class T>
BalanceReport<T> balance_report(const Diagram<T>& d) {
  BalanceReport<T> rep;
  const std::size_t n = d.size();
  if (n == 0) throw GeometryError("empty configuration");
  rep.target = d.rect.area() / T(static_cast<long>(2 * n));
  rep.neutral_area = d.neutral_area();
  rep.worst_deviation = T(0);
  for (std::size_t i = 0; i < n; ++i) {
    auto h = half_cells(d.sites[i], d.cells[i]);
    std::array<T, 4> a{h.left.area(), h.right.area(), h.top.area(), h.bottom.area()};
    for (const auto& v : a) {
      T dev = abs_of(T(v - rep.target));
      if (rep.worst_deviation < dev) rep.worst_deviation = dev;
    }
    rep.cell_areas.push_back(d.cell_area(i));
    rep.halves.push_back(std::move(a));
  }
  rep.is_balanced = sign_of(rep.worst_deviation) == 0;
  return rep;
}

template <class T>
BalanceReport<T> is_balanced(const Configuration<T>& cfg) {
  return balance_report(voronoi_diagram(cfg.points, cfg.rect, TiePolicy::NeutralZone));
}

/// a rows by b columns, centred in equal sub-rectangles.
template <class T>
Configuration<T> make_grid(int a, int b, const Rect<T>& rect) {
  if (a < 1 || b < 1) throw std::invalid_argument("grid counts must be positive");
  Configuration<T> cfg{rect, {}};
  for (int i = 1; i <= a; ++i) {
    for (int j = 1; j <= b; ++j) {
      cfg.points.push_back({rect.width * T(2 * j - 1) / T(2 * b), rect.height * T(2 * i - 1) / T(2 * a)});
    }
  }
  return cfg;
}

/// True iff the union of the given cells is one axis-aligned rectangle.
template <class T>
bool union_is_rectangle(const Region<T>& r) {
  auto loops = r.outline();
  if (loops.size() != 1 || loops[0].size() != 4) return false;
  const auto& l = loops[0];
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& u = l[i];
    const auto& v = l[(i + 1) % 4];
    if (!(u.x == v.x) && !(u.y == v.y)) return false;
  }
  return true;
}

template <class T>
bool is_rectangular_cell(const Region<T>& cell) {
  return union_is_rectangle(cell);
}

/// No proper non-empty subset of sites has cells whose union is a rectangle.
template <class T>
bool is_atomic(const Diagram<T>& d) {
  const std::size_t n = d.size();
  if (n > 16) throw std::invalid_argument("atomicity check limited to 16 sites");
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    Region<T> u;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) u.append(d.cells[i]);
    if (union_is_rectangle(u)) return false;
  }
  return true;
}

enum class Orientation { Identity, MirrorX, MirrorY, Rotate180 };

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::Identity: return "identity";
    case Orientation::MirrorX: return "mirror-x";
    case Orientation::MirrorY: return "mirror-y";
    case Orientation::Rotate180: return "rotate-180";
  }
  return "?";
}

template <class T>
struct Block {
  std::string name;
  Rect<T> rect;
  std::vector<Point<T>> points;

  Configuration<T> configuration() const { return {rect, points}; }

  Block oriented(Orientation o) const {
    Block b = *this;
    const bool fx = o == Orientation::MirrorX || o == Orientation::Rotate180;
    const bool fy = o == Orientation::MirrorY || o == Orientation::Rotate180;
    for (auto& p : b.points) {
      if (fx) p.x = rect.width - p.x;
      if (fy) p.y = rect.height - p.y;
    }
    return b;
  }

  /// Normalizes to height 1 (uniform scaling).
  Block normalized() const {
    if (rect.height == T(1)) return *this;
    Block b = *this;
    const T s = T(1) / rect.height;
    b.rect = Rect<T>(rect.width * s, T(1));
    for (auto& p : b.points) p = {p.x * s, p.y * s};
    return b;
  }
};

class UnknownBlock : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Stored atomic block by name: "R3", "R3'", "R5".
inline Block<Rational> stored_block(const std::string& name) {
  for (const auto& rec : atomic_records()) {
    if (name != rec.name) continue;
    Block<Rational> b;
    b.name = rec.name;
    b.rect = Rect<Rational>(parse_rational(rec.width), parse_rational(rec.height));
    for (const auto& [x, y] : rec.points) b.points.push_back({parse_rational(x), parse_rational(y)});
    return b;
  }
  throw UnknownBlock("unknown atomic block '" + name + "'");
}

/// R2(rho) for 1 <= rho <= 3/2.
inline Block<Rational> r2_block(const Rational& rho) {
  if (rho < 1 || Rational(3, 2) < rho) throw std::out_of_range("R2 needs 1 <= rho <= 3/2");
  Block<Rational> b;
  b.name = "R2(" + format_rational(rho) + ")";
  b.rect = Rect<Rational>(rho, Rational(1));
  b.points = {{Rational(1, 2), Rational(1, 4)}, {rho - Rational(1, 2), Rational(3, 4)}};
  return b;
}

inline Block<Rational> grid_block(int a, int b, const Rect<Rational>& rect) {
  Block<Rational> g;
  g.name = "Grid(" + std::to_string(a) + "," + std::to_string(b) + ")";
  g.rect = rect;
  g.points = make_grid(a, b, rect).points;
  return g;
}

/// Named atomic block; `rho` applies to R2 only.
inline Block<Rational> atomic(const std::string& name, const std::optional<Rational>& rho = std::nullopt) {
  if (name == "R2") return r2_block(rho.value_or(Rational(5, 4)));
  if (name == "R4") throw UnknownBlock("no exact coordinates are known for R4");
  return stored_block(name);
}

namespace detail {

// Distance from the vertical line x = bx to the nearest point, as a function
// of y; equal profiles on a shared side let two blocks be glued without
// changing any cell.
template <class T>
bool same_side_profile(const std::vector<Point<T>>& a, const T& ax, const std::vector<Point<T>>& b, const T& bx,
                       const T& height) {
  auto f = [](const std::vector<Point<T>>& pts, const T& x, const T& y) {
    std::optional<T> best;
    for (const auto& p : pts) {
      T v = abs_of(T(p.x - x)) + abs_of(T(p.y - y));
      if (!best || v < *best) best = v;
    }
    return *best;
  };
  std::vector<T> probes{T(0), height};
  auto add_family = [&](const std::vector<Point<T>>& pts, const T& x) {
    for (const auto& p : pts) probes.push_back(p.y);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        // |y - yi| + ci = |y - yj| + cj has its crossing at
        // y = (yi + yj + cj - ci) / 2 when the V's cross on a slope pair.
        T ci = abs_of(T(pts[i].x - x));
        T cj = abs_of(T(pts[j].x - x));
        probes.push_back((pts[i].y + pts[j].y + cj - ci) / 2);
      }
    }
  };
  add_family(a, ax);
  add_family(b, bx);
  for (const auto& y : probes) {
    if (sign_of(y) < 0 || height < y) continue;
    if (!(f(a, ax, y) == f(b, bx, y))) return false;
  }
  return true;
}

}  // namespace detail

template <class T>
struct Concatenation {
  Configuration<T> config;
  std::vector<Orientation> orientations;
  std::vector<T> offsets;  // left edge of each block
};

/// Places blocks left to right at height 1, choosing per block the first
/// rectangle symmetry (in the order identity, mirror-x, mirror-y, rotate-180)
/// that lets its left side glue onto the previous block's right side.
template <class T>
Concatenation<T> concatenate_oriented(const std::vector<Block<T>>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("no blocks to concatenate");
  std::vector<Block<T>> norm;
  for (const auto& b : blocks) {
    if (!(b.rect.height == blocks.front().rect.height)) throw std::invalid_argument("block heights differ");
    norm.push_back(b.normalized());
  }
  constexpr std::array<Orientation, 4> order{Orientation::Identity, Orientation::MirrorX, Orientation::MirrorY,
                                             Orientation::Rotate180};
  std::vector<Orientation> chosen(norm.size());
  const T one(1);
  std::function<bool(std::size_t)> place = [&](std::size_t k) {
    if (k == norm.size()) return true;
    for (auto o : order) {
      if (k > 0) {
        const auto prev = norm[k - 1].oriented(chosen[k - 1]);
        const auto cur = norm[k].oriented(o);
        if (!detail::same_side_profile(prev.points, prev.rect.width, cur.points, T(0), one)) continue;
      }
      chosen[k] = o;
      if (place(k + 1)) return true;
    }
    return false;
  };
  if (!place(0)) throw std::runtime_error("blocks cannot be glued in any orientation");
  Concatenation<T> out;
  T x{0};
  for (std::size_t k = 0; k < norm.size(); ++k) {
    const auto b = norm[k].oriented(chosen[k]);
    out.offsets.push_back(x);
    for (const auto& p : b.points) out.config.points.push_back({p.x + x, p.y});
    x += b.rect.width;
  }
  out.config.rect = Rect<T>(x, one);
  out.orientations = chosen;
  return out;
}

template <class T>
Configuration<T> concatenate(const std::vector<Block<T>>& blocks) {
  return concatenate_oriented(blocks).config;
}

class EncodingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One (R3, R3') pair per bit, followed by an R5 block for every 1.
inline std::vector<Block<Rational>> encoding_blocks(const std::string& bits) {
  if (bits.empty()) throw EncodingError("empty bit string");
  const auto r3 = stored_block("R3");
  const auto r3m = stored_block("R3'");
  const auto r5 = stored_block("R5");
  std::vector<Block<Rational>> blocks;
  for (char c : bits) {
    if (c != '0' && c != '1') throw EncodingError(std::string("non-binary character '") + c + "'");
    blocks.push_back(r3);
    blocks.push_back(r3m);
    if (c == '1') blocks.push_back(r5);
  }
  return blocks;
}

inline Configuration<Rational> encode_binary_string(const std::string& bits) {
  return concatenate(encoding_blocks(bits));
}

/// Same point set up to a symmetry of the rectangles and uniform scaling.
template <class T>
bool congruent(const Configuration<T>& a, const Configuration<T>& b) {
  if (a.size() != b.size()) return false;
  auto canon = [](const Configuration<T>& c) {
    // Rotate portrait to landscape, then scale to height 1.
    Configuration<T> out = c;
    if (c.rect.width < c.rect.height) {
      out.rect = Rect<T>(c.rect.height, c.rect.width);
      for (auto& p : out.points) p = {p.y, p.x};
    }
    const T s = T(1) / out.rect.height;
    out.rect = Rect<T>(out.rect.width * s, T(1));
    for (auto& p : out.points) p = {p.x * s, p.y * s};
    return out;
  };
  const auto ca = canon(a);
  const auto cb = canon(b);
  if (!(ca.rect == cb.rect)) return false;
  auto sorted = [](std::vector<Point<T>> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto target = sorted(cb.points);
  const T& w = ca.rect.width;
  const T& h = ca.rect.height;
  std::vector<std::function<Point<T>(const Point<T>&)>> maps{
      [](const Point<T>& p) { return p; },
      [&](const Point<T>& p) { return Point<T>{w - p.x, p.y}; },
      [&](const Point<T>& p) { return Point<T>{p.x, h - p.y}; },
      [&](const Point<T>& p) { return Point<T>{w - p.x, h - p.y}; },
  };
  if (w == h) {
    maps.push_back([](const Point<T>& p) { return Point<T>{p.y, p.x}; });
    maps.push_back([&](const Point<T>& p) { return Point<T>{w - p.y, p.x}; });
    maps.push_back([&](const Point<T>& p) { return Point<T>{p.y, h - p.x}; });
    maps.push_back([&](const Point<T>& p) { return Point<T>{w - p.y, h - p.x}; });
  }
  for (const auto& m : maps) {
    std::vector<Point<T>> img;
    for (const auto& p : ca.points) img.push_back(m(p));
    if (sorted(img) == target) return true;
  }
  return false;
}

}  // namespace mvg
