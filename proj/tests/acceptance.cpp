// Acceptance suite: one PASS/FAIL line per criterion; exits 1 if any fails.
//
//   acceptance            run everything
//   acceptance 3 7        run criteria 3 and 7 only

#include "mvg/search.hpp"

#include "mvg/game.hpp"
#include "mvg/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace mvg;

namespace {

using Q = Rational;
using P = Point<Q>;

Q r(long n, long d = 1) { return make_rational(n, d); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // wall-clock limit; 0 means none
  std::function<Outcome()> run;
};

// Collects failures without stopping at the first one.
class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    ++checks_;
    if (!cond) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << checks_ - failures_ << "/" << checks_ << " checks";
    if (!summary.empty()) s << ", " << summary;
    if (failures_) s << "; first failure: " << first_;
    return {failures_ == 0, s.str()};
  }

 private:
  long checks_ = 0, failures_ = 0;
  std::string first_;
};

std::string str(const P& p) { return "(" + format_rational(p.x) + ", " + format_rational(p.y) + ")"; }

Q l1(const P& a, const P& b) { return abs_of(Q(a.x - b.x)) + abs_of(Q(a.y - b.y)); }

// Zero set of d(z,p) - d(z,q) along an axis-parallel line, solved piecewise:
// between the breakpoints the difference is affine in the line parameter.
struct ZeroSet {
  std::vector<Q> points;  // isolated zeros
  bool interval = false;  // some piece vanishes identically
};

ZeroSet zeros_on_line(const P& p, const P& q, bool vertical_line, const Q& c) {
  auto at = [&](const Q& t) { return vertical_line ? P{c, t} : P{t, c}; };
  auto f = [&](const Q& t) { return Q(l1(at(t), p) - l1(at(t), q)); };
  std::vector<Q> b{vertical_line ? p.y : p.x, vertical_line ? q.y : q.x};
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  // Pieces as [lo, hi]; the outer pieces use a unit step to find the slope.
  struct Piece {
    Q lo, hi;
    bool lo_inf, hi_inf;
  };
  std::vector<Piece> pieces{{b.front() - 1, b.front(), true, false}};
  for (std::size_t i = 0; i + 1 < b.size(); ++i) pieces.push_back({b[i], b[i + 1], false, false});
  pieces.push_back({b.back(), b.back() + 1, false, true});
  ZeroSet z;
  for (const auto& pc : pieces) {
    const Q flo = f(pc.lo), fhi = f(pc.hi);
    const Q slope = (fhi - flo) / (pc.hi - pc.lo);
    if (sign_of(slope) == 0) {
      if (sign_of(flo) == 0) z.interval = true;
      continue;
    }
    const Q t = pc.lo - flo / slope;
    if ((pc.lo_inf || !(t < pc.lo)) && (pc.hi_inf || !(pc.hi < t))) {
      if (std::find(z.points.begin(), z.points.end(), t) == z.points.end()) z.points.push_back(t);
    }
  }
  return z;
}

// Classification from zero sets on far lines only.
BisectorKind oracle_kind(const P& p, const P& q) {
  const Q far_x = max_of(p.x, q.x) + 1, far_y = max_of(p.y, q.y) + 1;
  const Q near_x = min_of(p.x, q.x) - 1, near_y = min_of(p.y, q.y) - 1;
  auto v = zeros_on_line(p, q, true, far_x);
  if (v.interval) return BisectorKind::Degenerate;
  if (v.points.empty()) {
    // Crosses every horizontal line once; straight iff the crossings agree.
    auto a = zeros_on_line(p, q, false, near_y), c = zeros_on_line(p, q, false, far_y);
    return a.points == c.points ? BisectorKind::StraightVertical : BisectorKind::VerticalStaircase;
  }
  auto a = zeros_on_line(p, q, true, near_x);
  return a.points == v.points ? BisectorKind::StraightHorizontal : BisectorKind::HorizontalStaircase;
}

P random_point(std::mt19937_64& rng) {
  // Half the coordinates come from a coarse lattice so that equal offsets
  // (degenerate pairs) and shared rows or columns occur often.
  std::uniform_int_distribution<int> coarse(1, 15), fine(1, 9999), pick(0, 1);
  auto coord = [&] { return pick(rng) ? r(coarse(rng), 16) : r(fine(rng), 10000); };
  return {coord(), coord()};
}

Outcome bisector_taxonomy() {
  Checker c;
  std::mt19937_64 rng(20240101);
  std::map<BisectorKind, int> seen;
  int pairs = 0;
  while (pairs < 10000) {
    P p = random_point(rng), q = random_point(rng);
    if (pairs % 5 == 0) {
      // Force an equal-offset pair.
      const Q d = abs_of(Q(p.x - q.x));
      q.y = p.y + d < 1 ? Q(p.y + d) : Q(p.y - d);
      if (!(0 < q.y) || sign_of(d) == 0) continue;
    }
    if (p == q) continue;
    ++pairs;
    const auto kind = classify_bisector(p, q);
    ++seen[kind];
    c.expect(kind == oracle_kind(p, q), str(p) + " " + str(q) + " classified " + to_string(kind));
    if (kind == BisectorKind::Degenerate) {
      auto b = bisector_geometry(p, q, Rect<Q>(r(1), r(1)));
      c.expect(b.degenerate_regions.size() == 2, "degenerate pair " + str(p) + " " + str(q) + " region count");
      for (const auto& g : b.degenerate_regions) {
        c.expect(sign_of(g.area()) > 0, "empty neutral region");
        for (const auto& loop : g.outline()) {
          P centre{0, 0};
          for (const auto& v : loop) centre = {centre.x + v.x, centre.y + v.y};
          centre = {centre.x / Q(static_cast<long>(loop.size())), centre.y / Q(static_cast<long>(loop.size()))};
          c.expect(l1(centre, p) == l1(centre, q), "neutral region not equidistant at " + str(centre));
        }
      }
    }
  }
  std::ostringstream s;
  s << pairs << " pairs:";
  for (auto [k, n] : seen) s << ' ' << to_string(k) << '=' << n;
  return c.outcome(s.str());
}

Outcome partition_conservation() {
  Checker c;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> nsites(1, 6), rule(0, 2), wd(4, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    Rect<Q> rect(r(wd(rng), 8), r(wd(rng), 8));
    std::uniform_int_distribution<int> gx(1, static_cast<int>(rect.width.get_d() * 16) - 1),
        gy(1, static_cast<int>(rect.height.get_d() * 16) - 1), fine(1, 997);
    const int n = nsites(rng);
    std::vector<P> pts;
    while (static_cast<int>(pts.size()) < n) {
      P p = trial % 2 ? P{r(gx(rng), 16), r(gy(rng), 16)}
                      : P{rect.width * r(fine(rng), 998), rect.height * r(fine(rng), 998)};
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    TieRule tie;
    switch (rule(rng)) {
      case 0: tie = TieRule::uniform(TiePolicy::NeutralZone); break;
      case 1: tie = TieRule::uniform(TiePolicy::AwardHorizontal); break;
      default: tie = game_tie_rule(static_cast<std::size_t>((n + 1) / 2), static_cast<std::size_t>(n / 2)); break;
    }
    auto d = voronoi_diagram(pts, rect, tie);
    Q total = d.neutral_area();
    for (std::size_t i = 0; i < d.size(); ++i) total += d.cell_area(i);
    c.expect(total == rect.area(), "trial " + std::to_string(trial) + " sums to " + format_rational(total));
  }
  return c.outcome("1000 configurations, n <= 6, three tie rules");
}

void expect_balanced(Checker& c, const Configuration<Q>& cfg, const std::string& what) {
  auto rep = is_balanced(cfg);
  c.expect(rep.is_balanced, what + " not balanced");
  const Q target = cfg.rect.area() / Q(static_cast<long>(2 * cfg.size()));
  c.expect(rep.target == target, what + " target");
  for (const auto& h : rep.halves)
    for (const auto& a : h) c.expect(a == target, what + " half " + format_rational(a) + " != " + format_rational(target));
}

Outcome balanced_characterization() {
  Checker c;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      expect_balanced(c, make_grid(a, b, Rect<Q>(r(b), r(a))), "grid " + std::to_string(a) + "x" + std::to_string(b));
      expect_balanced(c, make_grid(a, b, Rect<Q>(r(5, 3), r(1))), "grid " + std::to_string(a) + "x" + std::to_string(b) + " in 5/3 x 1");
    }
  for (const Q& rho : {r(1), r(9, 8), r(5, 4), r(11, 8)}) expect_balanced(c, r2_block(rho).configuration(), "R2(" + format_rational(rho) + ")");
  return c.outcome("32 grids, R2 at 1, 9/8, 5/4, 11/8");
}

Outcome atomic_derivation() {
  Checker c;
  auto r3 = stored_block("R3").configuration();
  c.expect(max_of(r3.rect.width, r3.rect.height) / min_of(r3.rect.width, r3.rect.height) == r(49, 36), "R3 aspect");
  expect_balanced(c, r3, "R3");
  expect_balanced(c, stored_block("R3'").configuration(), "R3'");
  expect_balanced(c, stored_block("R5").configuration(), "R5");
  auto r5 = stored_block("R5");
  c.expect(r5.rect.width == r(60, 49), "R5 width " + format_rational(r5.rect.width));
  int combos = 0;
  for (int k = 0; 3 * k <= 20; ++k)
    for (int l = 0; 3 * k + 5 * l <= 20; ++l) {
      if (k + l == 0) continue;
      std::vector<Block<Q>> blocks(static_cast<std::size_t>(k), stored_block("R3"));
      for (int i = 0; i < l; ++i) blocks.push_back(r5);
      auto cfg = concatenate(blocks);
      const std::string what = "[R3]^" + std::to_string(k) + "[R5]^" + std::to_string(l);
      c.expect(cfg.rect.width == r(36 * k + 60 * l, 49), what + " width " + format_rational(cfg.rect.width));
      c.expect(cfg.size() == static_cast<std::size_t>(3 * k + 5 * l), what + " size");
      expect_balanced(c, cfg, what);
      ++combos;
    }
  return c.outcome(std::to_string(combos) + " concatenations");
}

Outcome string_encoding() {
  Checker c;
  std::vector<std::pair<std::string, Configuration<Q>>> all;
  for (int len = 1; len <= 4; ++len)
    for (int m = 0; m < (1 << len); ++m) {
      std::string s;
      for (int i = len - 1; i >= 0; --i) s += (m >> i & 1) ? '1' : '0';
      all.emplace_back(s, encode_binary_string(s));
      c.expect(is_balanced(all.back().second).is_balanced, s + " not balanced");
    }
  c.expect(all.size() == 30, "string count");
  std::string collisions;
  int identical = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const bool same = congruent(all[i].second, all[j].second);
      c.expect(!same, all[i].first + " congruent to " + all[j].first);
      if (same) collisions += " " + all[i].first + "~" + all[j].first;
      auto a = all[i].second.points, b = all[j].second.points;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      identical += all[i].second.rect == all[j].second.rect && a == b;
    }
  std::string summary = "30 strings, 435 pairs, " + std::to_string(identical) + " identical point sets";
  if (!collisions.empty()) summary += ", congruent under reflection:" + collisions;
  return c.outcome(summary);
}

Outcome corner_point() {
  Checker c;
  const Rect<Q> unit(r(1), r(1));
  auto g = make_grid(2, 2, unit).points;
  auto cp = grid_corner_winning_point(g, unit);
  const Q d = r(1, 4);
  c.expect(cp.d == d, "d = " + format_rational(cp.d));
  c.expect(cp.nominal_area == r(9, 64), "exact area " + format_rational(cp.nominal_area));
  c.expect(cp.nominal_area == 2 * d * d + d * d / 4, "closed form");
  c.expect(cp.nominal_area == black_cell_area_half_neutral(g, cp.nominal, unit), "diagram value");
  c.expect(r(1, 8) < cp.certified_area, "certified point beats 1/8");
  SampleSpec spec;
  spec.resolution = 512;
  auto s = sampled_owner_areas(GamePosition<Q>{unit, g, {cp.nominal}}, spec);
  const double est = s.black_area + s.neutral_area / 2;
  c.expect(std::abs(est - 9.0 / 64) <= s.error_bound, "oracle " + std::to_string(est) + " bound " + std::to_string(s.error_bound));
  std::ostringstream o;
  o << "area 9/64, oracle " << est << " +- " << s.error_bound;
  return c.outcome(o.str());
}

Outcome grid_formulas() {
  Checker c;
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 4; ++n) {
    Rect<Q> rect(r(n) + r(1, 3), r(1));
    auto g = make_grid(1, n, rect).points;
    const Q wp = rect.width / (2 * n), hp = r(1, 2);
    std::uniform_int_distribution<int> k(1, 1023);
    std::uniform_int_distribution<int> slot_of(0, n - 2);
    for (int regime = 0; regime < 2; ++regime) {
      int done = 0;
      while (done < 200) {
        Q x = wp * r(k(rng), 1024), y = hp * r(k(rng), 1024);
        if (x == y || (x > y) != (regime == 0)) continue;
        const int slot = slot_of(rng);
        Point<Q> b{g[static_cast<std::size_t>(slot)].x + x, g[static_cast<std::size_t>(slot)].y + y};
        const Q f = grid_black_area(x, y, n, rect, slot), e = black_cell_area(g, b, rect);
        c.expect(f == e, "n=" + std::to_string(n) + " x=" + format_rational(x) + " y=" + format_rational(y) + " slot " +
                             std::to_string(slot) + ": " + format_rational(f) + " vs " + format_rational(e));
        ++done;
      }
    }
    for (int t = 0; t < 20; ++t) {
      Q x = min_of(wp, hp) * r(k(rng), 1024);
      const int slot = slot_of(rng);
      Point<Q> b{g[static_cast<std::size_t>(slot)].x + x, g[static_cast<std::size_t>(slot)].y + x};
      c.expect(grid_black_area(x, x, n, rect, slot) == black_cell_area_half_neutral(g, b, rect),
               "x=y at " + format_rational(x) + " n=" + std::to_string(n));
    }
  }
  return c.outcome("n = 2, 3, 4; 200 per regime plus 20 on x = y");
}

Outcome main_characterization() {
  Checker c;
  std::ostringstream s;
  for (int n = 1; n <= 5; ++n)
    for (const Q& raw : {Q(r(n) - r(1, 2)), Q(r(n) - r(1, 4)), r(n), Q(r(n) + r(1, 2))}) {
      const Q rho = max_of(raw, r(1));
      const Rect<Q> rect(rho, r(1));
      const auto expected = verdict(n, rho);
      // White plays its optimal set when one exists, otherwise the 1 x n grid,
      // which respects P1.
      auto white = rho < n ? make_grid(1, n, rect).points : white_optimal(n, rect).points;
      c.expect(satisfies_p1(white, rect), "white set violates P1");
      auto out = black_best_response(white, rect);
      c.expect(out.score.black_area + out.score.white_area + out.score.neutral_area == rect.area(), "score partition");
      const bool black_wins = out.score.winner == Winner::Black;
      c.expect(black_wins == (expected == Winner::Black),
               "n=" + std::to_string(n) + " rho=" + format_rational(rho) + ": engine " + to_string(out.score.winner) +
                   ", verdict " + to_string(expected));
      c.expect((expected == Winner::Black) == (rho < n), "verdict rule");
      s << ' ' << n << '@' << format_rational(rho) << ':' << to_string(out.score.winner)[0];
    }
  return c.outcome("winners" + s.str());
}

Outcome steal_guarantee() {
  Checker c;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> nsite(1, 5), coord(1, 255), eden(2, 400);
  int done = 0, clamped = 0;
  while (done < 100) {
    Rect<Q> rect(r(coord(rng) % 3 + 1) + r(1, 2), r(1));
    std::vector<P> w;
    const int n = nsite(rng);
    while (static_cast<int>(w.size()) < n) {
      P p{rect.width * r(coord(rng), 256), r(coord(rng), 256)};
      if (std::find(w.begin(), w.end(), p) == w.end()) w.push_back(p);
    }
    const auto i = static_cast<std::size_t>(coord(rng) % n);
    const auto h = static_cast<HalfId>(coord(rng) % 4);
    const auto halves = white_halves(w, rect);
    if (sign_of(halves[i][static_cast<std::size_t>(h)]) == 0) continue;
    const Q eps = halves[i][static_cast<std::size_t>(h)] / Q(eden(rng));
    auto s = steal_point(i, h, eps, w, rect);
    clamped += s.clamped;
    c.expect(s.half_area == halves[i][static_cast<std::size_t>(h)], "half area");
    c.expect(!(s.stolen < s.half_area - eps), "stolen " + format_rational(s.stolen) + " < " + format_rational(s.half_area - eps));
    ++done;
  }
  return c.outcome("100 triples, " + std::to_string(clamped) + " clamped");
}

Outcome uniqueness_search() {
  Checker c;
  const int resolution = 32;
  const double tol = 1e-4;  // relative: deviation <= tol * area
  std::ostringstream s;
  SearchOptions two;
  two.rho_min = 1;
  two.rho_max = 1.5;
  auto h2 = search_balanced_nongrid(2, resolution, tol, two);
  c.expect(!h2.empty(), "n=2 found nothing on [1, 3/2]");
  for (const auto& h : h2) {
    const double dist = std::min(distance_to_r2_family(h.config), grid_distance(h.config));
    c.expect(dist <= 1.0 / resolution, "n=2 hit at rho " + std::to_string(h.rho) + " is " + std::to_string(dist) + " from R2/grid");
  }
  SearchOptions fixed;
  fixed.fixed_rho = r(2);
  auto h2f = search_balanced_nongrid(2, resolution, tol, fixed);
  c.expect(h2f.empty(), "n=2 at rho=2: " + std::to_string(h2f.size()) + " non-grid hits");
  SearchOptions three;
  auto h3 = search_balanced_nongrid(3, resolution, tol, three);
  c.expect(!h3.empty(), "n=3 found nothing");
  double lo = 1e9, hi = -1e9;
  for (const auto& h : h3) {
    lo = std::min(lo, h.rho);
    hi = std::max(hi, h.rho);
    c.expect(std::abs(h.rho - 49.0 / 36) <= 1.0 / resolution, "n=3 hit at rho " + std::to_string(h.rho));
  }
  s << "n=2: " << h2.size() << " hits, rho=2: " << h2f.size() << ", n=3: " << h3.size() << " hits";
  if (!h3.empty()) s << " in [" << lo << ", " << hi << "]";
  return c.outcome(s.str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "bisector taxonomy", 10, bisector_taxonomy},
      {2, "partition conservation", 0, partition_conservation},
      {3, "balanced characterization", 0, balanced_characterization},
      {4, "atomic derivation", 0, atomic_derivation},
      {5, "string encoding", 0, string_encoding},
      {6, "2x2 winning point", 0, corner_point},
      {7, "grid formulas", 0, grid_formulas},
      {8, "main characterization", 300, main_characterization},
      {9, "steal guarantee", 0, steal_guarantee},
      {10, "uniqueness search", 600, uniqueness_search},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& cr : all) {
    if (!only.empty() && !only.count(cr.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0 && secs > cr.budget_s) {
      o.ok = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(cr.budget_s)) + " s budget";
    }
    std::printf("%s [%d] %s (%.1f s): %s\n", o.ok ? "PASS" : "FAIL", cr.id, cr.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d criteria failed\n", failed);
  return failed ? 1 : 0;
}
