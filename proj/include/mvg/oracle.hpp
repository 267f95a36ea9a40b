#pragma once
// Sampling estimates of cell areas. Uses manhattan_distance only, so it is an
// independent check on the polygon kernel.

#include "mvg/game.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace mvg {

enum class SampleMode { Grid, Random };

struct SampleSpec {
  SampleMode mode = SampleMode::Grid;
  int resolution = 256;            // samples per unit length (grid mode)
  std::uint64_t samples = 1 << 18;  // random mode
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

template <class T>
struct SampledScore {
  double white_area = 0;
  double black_area = 0;
  double neutral_area = 0;
  std::vector<double> site_area;  // strictly nearest, per site (white then black)
  double error_bound = 0;         // per reported area
};

namespace detail {

struct SampleLabel {
  int site = -1;  // strictly nearest site, or -1
  int colour = -1;  // 0 white, 1 black, -1 neutral
};

template <class T>
class NearestSites {
 public:
  NearestSites(const std::vector<Point<T>>& sites, const std::vector<int>& colour)
      : exact_(sites), colour_(colour) {
    for (const auto& s : sites) approx_.push_back({to_double(s.x), to_double(s.y)});
  }

  // exact() builds the sample point as a rational; only called on near-ties.
  template <class Exact>
  SampleLabel classify(double qx, double qy, Exact exact) const {
    double best = 1e300;
    for (const auto& s : approx_) best = std::min(best, std::abs(s.x - qx) + std::abs(s.y - qy));
    const double slack = 1e-9 * (1 + best);
    std::vector<int> near;
    for (std::size_t i = 0; i < approx_.size(); ++i) {
      double d = std::abs(approx_[i].x - qx) + std::abs(approx_[i].y - qy);
      if (d <= best + slack) near.push_back(static_cast<int>(i));
    }
    if (near.size() > 1) {
      // Settle near-ties exactly.
      const Point<Rational> q = exact();
      Rational bd;
      std::vector<int> exact;
      for (int i : near) {
        Point<Rational> s{Rational(exact_[i].x), Rational(exact_[i].y)};
        Rational d = manhattan_distance(s, q);
        if (exact.empty() || d < bd) {
          bd = d;
          exact = {i};
        } else if (d == bd) {
          exact.push_back(i);
        }
      }
      near = exact;
    }
    SampleLabel out;
    if (near.size() == 1) {
      out.site = near[0];
      out.colour = colour_[near[0]];
      return out;
    }
    int c = colour_[near[0]];
    for (int i : near)
      if (colour_[i] != c) c = -1;
    out.colour = c;
    return out;
  }

 private:
  std::vector<Point<T>> exact_;
  std::vector<Point<double>> approx_;
  std::vector<int> colour_;
};

struct Counts {
  std::vector<std::uint64_t> site;
  std::uint64_t colour[2] = {0, 0};
  std::uint64_t neutral = 0;
  std::uint64_t boundary = 0;  // grid samples next to a differently labelled sample
  std::uint64_t total = 0;
};

template <class T>
Counts sample_counts(const std::vector<Point<T>>& sites, const std::vector<int>& colour, const Rect<T>& rect,
                     const SampleSpec& spec) {
  if (spec.mode == SampleMode::Grid && spec.resolution < 8) throw std::invalid_argument("resolution must be at least 8");
  NearestSites<T> ns(sites, colour);
  const Rational W(rect.width), H(rect.height);
  const double Wd = to_double(rect.width), Hd = to_double(rect.height);
  unsigned nt = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  Counts total;
  total.site.assign(sites.size(), 0);

  auto label_key = [](const SampleLabel& l) { return l.site >= 0 ? l.site : -10 - l.colour; };

  if (spec.mode == SampleMode::Grid) {
    const long nx = std::max(1L, std::lround(std::ceil(to_double(rect.width) * spec.resolution)));
    const long ny = std::max(1L, std::lround(std::ceil(to_double(rect.height) * spec.resolution)));
    // Rows are labelled in parallel, then reduced in a fixed order.
    std::vector<std::vector<int>> keys(ny, std::vector<int>(nx));
    std::vector<Counts> part(ny);
    std::atomic<long> next{0};
    auto worker = [&]() {
      for (;;) {
        long j = next.fetch_add(1);
        if (j >= ny) return;
        Counts c;
        c.site.assign(sites.size(), 0);
        const double yd = Hd * (2 * j + 1) / (2.0 * ny);
        for (long i = 0; i < nx; ++i) {
          auto l = ns.classify(Wd * (2 * i + 1) / (2.0 * nx), yd, [&] {
            return Point<Rational>{W * Rational(2 * i + 1) / Rational(2 * nx), H * Rational(2 * j + 1) / Rational(2 * ny)};
          });
          keys[j][i] = label_key(l);
          if (l.site >= 0) ++c.site[l.site];
          if (l.colour >= 0) ++c.colour[l.colour]; else ++c.neutral;
          ++c.total;
        }
        part[j] = std::move(c);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& c : part) {
      for (std::size_t k = 0; k < sites.size(); ++k) total.site[k] += c.site[k];
      total.colour[0] += c.colour[0];
      total.colour[1] += c.colour[1];
      total.neutral += c.neutral;
      total.total += c.total;
    }
    for (long j = 0; j < ny; ++j)
      for (long i = 0; i < nx; ++i) {
        const int k = keys[j][i];
        bool edge = (i > 0 && keys[j][i - 1] != k) || (i + 1 < nx && keys[j][i + 1] != k) ||
                    (j > 0 && keys[j - 1][i] != k) || (j + 1 < ny && keys[j + 1][i] != k);
        if (edge) ++total.boundary;
      }
    return total;
  }

  // Random mode: fixed chunks, each with its own seeded stream.
  const std::uint64_t chunk = 4096;
  const std::uint64_t chunks = (spec.samples + chunk - 1) / chunk;
  std::vector<Counts> part(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::uint64_t k = next.fetch_add(1);
      if (k >= chunks) return;
      std::mt19937_64 rng(spec.seed * 0x9E3779B97F4A7C15ULL + k);
      const std::uint64_t m = std::min(chunk, spec.samples - k * chunk);
      Counts c;
      c.site.assign(sites.size(), 0);
      for (std::uint64_t s = 0; s < m; ++s) {
        // 2^-30 lattice keeps the coordinates exact rationals.
        const long ix = static_cast<long>(rng() >> 34), iy = static_cast<long>(rng() >> 34);
        auto l = ns.classify(Wd * (2 * ix + 1) / 2147483648.0, Hd * (2 * iy + 1) / 2147483648.0, [&] {
          return Point<Rational>{W * Rational(2 * ix + 1) / Rational(1L << 31), H * Rational(2 * iy + 1) / Rational(1L << 31)};
        });
        if (l.site >= 0) ++c.site[l.site];
        if (l.colour >= 0) ++c.colour[l.colour]; else ++c.neutral;
        ++c.total;
      }
      part[k] = std::move(c);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& c : part) {
    for (std::size_t k = 0; k < sites.size(); ++k) total.site[k] += c.site[k];
    total.colour[0] += c.colour[0];
    total.colour[1] += c.colour[1];
    total.neutral += c.neutral;
    total.total += c.total;
  }
  return total;
}

template <class T>
double error_bound_of(const Counts& c, const Rect<T>& rect, const SampleSpec& spec) {
  const double area = to_double(rect.area());
  if (spec.mode == SampleMode::Grid) {
    // Misclassified samples lie in lattice cells crossed by a cell boundary;
    // those are the samples with a differently labelled neighbour, plus one
    // lattice cell of slack per unit of boundary.
    const double frac = static_cast<double>(c.boundary) / static_cast<double>(c.total);
    return area * frac + area / spec.resolution;
  }
  // 3 sigma at the worst case p = 1/2.
  return 3.0 * area * 0.5 / std::sqrt(static_cast<double>(c.total));
}

}  // namespace detail

/// Areas by colour; same-colour ties count for that colour, mixed ties are neutral.
template <class T>
SampledScore<T> sampled_owner_areas(const GamePosition<T>& pos, const SampleSpec& spec = {}) {
  std::vector<Point<T>> sites = pos.white;
  sites.insert(sites.end(), pos.black.begin(), pos.black.end());
  std::vector<int> colour(pos.white.size(), 0);
  colour.resize(sites.size(), 1);
  auto c = detail::sample_counts(sites, colour, pos.rect, spec);
  const double area = to_double(pos.rect.area());
  const double tot = static_cast<double>(c.total);
  SampledScore<T> out;
  out.white_area = area * c.colour[0] / tot;
  out.black_area = area * c.colour[1] / tot;
  out.neutral_area = area * c.neutral / tot;
  for (auto s : c.site) out.site_area.push_back(area * s / tot);
  out.error_bound = detail::error_bound_of(c, pos.rect, spec);
  return out;
}

struct SampledArea {
  double area = 0;
  double error_bound = 0;
};

/// Area of samples strictly closest to cfg.points[index].
template <class T>
SampledArea sampled_cell_area(std::size_t index, const Configuration<T>& cfg, const SampleSpec& spec = {}) {
  if (index >= cfg.points.size()) throw std::out_of_range("site index out of range");
  std::vector<int> colour(cfg.points.size());
  for (std::size_t i = 0; i < colour.size(); ++i) colour[i] = static_cast<int>(i);
  auto c = detail::sample_counts(cfg.points, colour, cfg.rect, spec);
  const double area = to_double(cfg.rect.area());
  return {area * c.site[index] / static_cast<double>(c.total), detail::error_bound_of(c, cfg.rect, spec)};
}

template <class T>
SampledArea sampled_cell_area(const Point<T>& p, const Configuration<T>& cfg, const SampleSpec& spec = {}) {
  auto it = std::find(cfg.points.begin(), cfg.points.end(), p);
  if (it == cfg.points.end()) throw std::invalid_argument("point is not a site of the configuration");
  return sampled_cell_area(static_cast<std::size_t>(it - cfg.points.begin()), cfg, spec);
}

template <class T>
struct BruteForceHit {
  Point<T> point;
  SampledArea area;
};

/// Lattice argmax of the sampled black cell area over `candidates_per_unit`
/// candidate positions per unit length.
template <class T>
BruteForceHit<T> brute_force_winning_point(const std::vector<Point<T>>& white, const Rect<T>& rect,
                                           const SampleSpec& spec = {}, int candidates_per_unit = 16) {
  const long nx = std::max(1L, std::lround(std::ceil(to_double(rect.width) * candidates_per_unit)));
  const long ny = std::max(1L, std::lround(std::ceil(to_double(rect.height) * candidates_per_unit)));
  SampleSpec inner = spec;
  inner.threads = 1;
  std::vector<BruteForceHit<T>> best(static_cast<std::size_t>(nx * ny));
  std::vector<char> valid(best.size(), 0);
  std::atomic<long> next{0};
  auto worker = [&]() {
    for (;;) {
      long k = next.fetch_add(1);
      if (k >= nx * ny) return;
      long i = k % nx, j = k / nx;
      Point<T> b{rect.width * T(2 * i + 1) / T(2 * nx), rect.height * T(2 * j + 1) / T(2 * ny)};
      if (std::find(white.begin(), white.end(), b) != white.end()) continue;
      Configuration<T> cfg{rect, white};
      cfg.points.push_back(b);
      best[k] = {b, sampled_cell_area(white.size(), cfg, inner)};
      valid[k] = 1;
    }
  };
  unsigned nt = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  std::optional<BruteForceHit<T>> out;
  for (std::size_t k = 0; k < best.size(); ++k)
    if (valid[k] && (!out || out->area.area < best[k].area.area)) out = best[k];
  if (!out) throw std::invalid_argument("no candidate position");
  return *out;
}

}  // namespace mvg
