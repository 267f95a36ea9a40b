#pragma once
// Numerical search for balanced configurations.
//
// Candidates are found in double precision (Levenberg-Marquardt on the
// half-cell residuals) and then re-evaluated exactly; nothing is reported on
// the strength of the floating-point residual alone.

#include "mvg/balance.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <vector>

namespace mvg {

/// Last continued-fraction convergent with denominator at most max_den.
inline Rational best_rational(double v, long max_den) {
  const bool neg = v < 0;
  double x = std::abs(v);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(frac);
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0;
    long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - a;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rational(0);
  Rational r = make_rational(p1, q1);
  return neg ? Rational(-r) : r;
}

/// Half-cell residuals (4 per site) against area/(2n), in double precision.
inline std::vector<double> half_residuals(const std::vector<Point<double>>& pts, double width, double height) {
  Rect<double> rect(width, height);
  auto d = voronoi_diagram(pts, rect, TiePolicy::NeutralZone);
  const double target = width * height / (2.0 * static_cast<double>(pts.size()));
  std::vector<double> r;
  r.reserve(4 * pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& c = d.cells[i];
    const auto& p = pts[i];
    r.push_back(c.left_of(p.x).area() - target);
    r.push_back(c.right_of(p.x).area() - target);
    r.push_back(c.above(p.y).area() - target);
    r.push_back(c.below(p.y).area() - target);
  }
  return r;
}

struct RefineResult {
  std::vector<Point<double>> points;
  double width = 1;
  double residual = 0;  // max |half - target|
  bool converged = false;
};

namespace detail {

// Parameter vector: (x_i / width, y_i) for every site, then width if free.
struct HalfCellFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  int n_sites;
  bool free_width;
  double fixed_width;

  int inputs() const { return 2 * n_sites + (free_width ? 1 : 0); }
  int values() const { return 4 * n_sites; }

  double width_of(const Eigen::VectorXd& v) const {
    return free_width ? std::clamp(v[2 * n_sites], 0.05, 64.0) : fixed_width;
  }
  std::vector<Point<double>> points_of(const Eigen::VectorXd& v) const {
    const double w = width_of(v);
    std::vector<Point<double>> pts;
    for (int i = 0; i < n_sites; ++i) {
      pts.push_back({std::clamp(v[2 * i], 0.0, 1.0) * w, std::clamp(v[2 * i + 1], 0.0, 1.0)});
    }
    return pts;
  }

  int operator()(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
    out.resize(values());
    const double w = width_of(v);
    auto pts = points_of(v);
    try {
      auto r = half_residuals(pts, w, 1.0);
      for (int k = 0; k < values(); ++k) out[k] = r[k];
    } catch (const GeometryError&) {
      out.setConstant(1.0);
    }
    // Penalize leaving the box so the clamp does not create flat valleys.
    for (int i = 0; i < n_sites; ++i) {
      for (int c = 0; c < 2; ++c) {
        const double t = v[2 * i + c];
        const double excess = t < 0 ? -t : (t > 1 ? t - 1 : 0);
        if (excess > 0) out[4 * i + c] += excess;
      }
    }
    return 0;
  }
};

}  // namespace detail

/// Refines a seed (height 1) towards a balanced configuration.
inline RefineResult refine_balanced(const std::vector<Point<double>>& seed, double width, bool free_width,
                                    int max_evals = 4000) {
  detail::HalfCellFunctor f{static_cast<int>(seed.size()), free_width, width};
  Eigen::VectorXd v(f.inputs());
  for (int i = 0; i < f.n_sites; ++i) {
    v[2 * i] = seed[i].x / width;
    v[2 * i + 1] = seed[i].y;
  }
  if (free_width) v[2 * f.n_sites] = width;
  Eigen::NumericalDiff<detail::HalfCellFunctor> nd(f, 1e-9);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::HalfCellFunctor>> lm(nd);
  lm.parameters.ftol = 1e-15;
  lm.parameters.xtol = 1e-15;
  lm.parameters.maxfev = max_evals;
  lm.minimize(v);
  RefineResult out;
  out.width = f.width_of(v);
  out.points = f.points_of(v);
  Eigen::VectorXd r(f.values());
  f(v, r);
  out.residual = r.cwiseAbs().maxCoeff();
  out.converged = out.residual < 1e-9;
  return out;
}

/// Exact rationals near a double configuration, verified balanced.
inline std::optional<Configuration<Rational>> reconstruct_balanced(const RefineResult& r, long max_den) {
  Configuration<Rational> cfg;
  cfg.rect = Rect<Rational>(best_rational(r.width, max_den), Rational(1));
  for (const auto& p : r.points) cfg.points.push_back({best_rational(p.x, max_den), best_rational(p.y, max_den)});
  try {
    if (is_balanced(cfg).is_balanced) return cfg;
  } catch (const GeometryError&) {
  }
  return std::nullopt;
}

struct SearchHit {
  Configuration<Rational> config;  // exact image of the double solution
  double rho = 0;
  double deviation = 0;  // exact worst half-cell deviation
};

struct SearchOptions {
  double rho_min = 1.0;
  double rho_max = 2.0;
  std::optional<Rational> fixed_rho;  // keep the aspect ratio pinned
  int seeds_per_rho = 48;
  unsigned seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Rotates a portrait configuration to landscape and scales it to height 1.
template <class T>
Configuration<T> landscape(const Configuration<T>& cfg) {
  Configuration<T> out;
  if (cfg.rect.width < cfg.rect.height) {
    const T s = cfg.rect.width;
    out.rect = Rect<T>(cfg.rect.height / s, T(1));
    for (const auto& p : cfg.points) out.points.push_back({p.y / s, p.x / s});
  } else {
    const T s = cfg.rect.height;
    out.rect = Rect<T>(cfg.rect.width / s, T(1));
    for (const auto& p : cfg.points) out.points.push_back({p.x / s, p.y / s});
  }
  return out;
}

/// Distance in coordinates to the nearest a x b grid with a * b = n.
template <class T>
double grid_distance(const Configuration<T>& cfg) {
  const int n = static_cast<int>(cfg.size());
  double best = 1e300;
  std::vector<Point<double>> pts;
  for (const auto& p : cfg.points) pts.push_back({to_double(p.x), to_double(p.y)});
  std::sort(pts.begin(), pts.end());
  const double w = to_double(cfg.rect.width), h = to_double(cfg.rect.height);
  for (int a = 1; a <= n; ++a) {
    if (n % a) continue;
    const int b = n / a;
    std::vector<Point<double>> g;
    for (int i = 1; i <= a; ++i)
      for (int j = 1; j <= b; ++j) g.push_back({w * (2 * j - 1) / (2.0 * b), h * (2 * i - 1) / (2.0 * a)});
    std::sort(g.begin(), g.end());
    // Points sorted lexicographically are matched greedily by nearest.
    std::vector<bool> used(g.size(), false);
    double worst = 0;
    for (const auto& p : pts) {
      double bd = 1e300;
      std::size_t bi = 0;
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (used[k]) continue;
        double dd = std::max(std::abs(p.x - g[k].x), std::abs(p.y - g[k].y));
        if (dd < bd) {
          bd = dd;
          bi = k;
        }
      }
      used[bi] = true;
      worst = std::max(worst, bd);
    }
    best = std::min(best, worst);
  }
  return best;
}

/// Coordinate distance to R2(rho) at the same aspect ratio under the four
/// reflections of the rectangle; infinite outside 1 <= rho <= 3/2.
template <class T>
double distance_to_r2_family(const Configuration<T>& cfg) {
  if (cfg.size() != 2) return std::numeric_limits<double>::infinity();
  auto c = landscape(cfg);
  const double rho = to_double(c.rect.width);
  if (rho < 1 || rho > 1.5) return std::numeric_limits<double>::infinity();
  const Point<double> r2[2] = {{0.5, 0.25}, {rho - 0.5, 0.75}};
  double best = std::numeric_limits<double>::infinity();
  for (int mx = 0; mx < 2; ++mx)
    for (int my = 0; my < 2; ++my) {
      Point<double> q[2];
      for (int i = 0; i < 2; ++i) {
        const double x = to_double(c.points[i].x), y = to_double(c.points[i].y);
        q[i] = {mx ? rho - x : x, my ? 1 - y : y};
      }
      auto dist = [](const Point<double>& a, const Point<double>& b) {
        return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
      };
      best = std::min(best, std::min(std::max(dist(q[0], r2[0]), dist(q[1], r2[1])),
                                     std::max(dist(q[0], r2[1]), dist(q[1], r2[0]))));
    }
  return best;
}

/// Configurations with worst exact half-cell deviation <= tol * area that are
/// not within sqrt(tol) of a grid, as landscape rectangles of height 1. Aspect ratios are seeded on the lattice
/// rho_min + k / resolution and left free unless fixed_rho is set;
/// seed points come from a lattice of step 1 / resolution.
inline std::vector<SearchHit> search_balanced_nongrid(int n, int resolution, double tol, const SearchOptions& opt = {}) {
  if (n < 2 || n > 3) throw std::invalid_argument("search supports n = 2 or 3");
  if (resolution < 8) throw std::invalid_argument("resolution must be at least 8");
  struct Task {
    double rho;
    std::vector<Point<double>> seed;
  };
  std::vector<Task> tasks;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> cell(1, resolution - 1);
  std::vector<double> rhos;
  if (opt.fixed_rho) {
    rhos.push_back(opt.fixed_rho->get_d());
  } else {
    for (int k = 0;; ++k) {
      double r = opt.rho_min + static_cast<double>(k) / resolution;
      if (r > opt.rho_max + 1e-12) break;
      rhos.push_back(r);
    }
  }
  for (double rho : rhos) {
    for (int s = 0; s < opt.seeds_per_rho; ++s) {
      Task t{rho, {}};
      for (int i = 0; i < n; ++i) {
        t.seed.push_back({rho * cell(rng) / resolution, static_cast<double>(cell(rng)) / resolution});
      }
      tasks.push_back(std::move(t));
    }
  }

  std::vector<std::optional<SearchHit>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      const auto& t = tasks[k];
      RefineResult r;
      try {
        r = refine_balanced(t.seed, t.rho, !opt.fixed_rho.has_value());
      } catch (const std::exception&) {
        continue;
      }
      if (r.residual > tol * r.width) continue;
      Configuration<Rational> cfg;
      cfg.rect = opt.fixed_rho ? Rect<Rational>(*opt.fixed_rho, Rational(1))
                               : Rect<Rational>(Rational(r.width), Rational(1));
      for (const auto& p : r.points) cfg.points.push_back({Rational(p.x), Rational(p.y)});
      BalanceReport<Rational> rep;
      try {
        rep = is_balanced(cfg);
      } catch (const GeometryError&) {
        continue;
      }
      const double area = cfg.rect.area().get_d();
      const double dev = rep.worst_deviation.get_d();
      if (dev > tol * area) continue;
      // Half-cell deviation grows quadratically along near-flat valleys around
      // a grid, so proximity is measured at the sqrt(tol) scale.
      if (grid_distance(cfg) <= std::sqrt(tol)) continue;
      cfg = landscape(cfg);
      results[k] = SearchHit{cfg, cfg.rect.width.get_d(), dev};
    }
  };
  unsigned nt = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<SearchHit> hits;
  for (auto& r : results)
    if (r) hits.push_back(std::move(*r));
  // Order-independent output.
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.rho != b.rho) return a.rho < b.rho;
    return a.config.points < b.config.points;
  });
  return hits;
}

}  // namespace mvg
