#include "mvg/game.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mvg;

namespace {
using Q = Rational;
Q r(long n, long d = 1) { return make_rational(n, d); }
Rect<Q> unit() { return Rect<Q>(r(1), r(1)); }

void expect_conserved(const Score<Q>& s, const Rect<Q>& rect) {
  EXPECT_EQ(s.white_area + s.black_area + s.neutral_area, rect.area());
}
}  // namespace

TEST(Score, Examples) {
  auto s = score(GamePosition<Q>{unit(), {{r(1, 2), r(1, 2)}}, {{r(1, 4), r(1, 2)}}});
  EXPECT_EQ(s.white_area, r(5, 8));
  EXPECT_EQ(s.black_area, r(3, 8));
  EXPECT_EQ(s.winner, Winner::White);
  expect_conserved(s, unit());

  auto t = score(GamePosition<Q>{unit(), {{r(1, 4), r(1, 4)}}, {{r(3, 4), r(3, 4)}}});
  EXPECT_EQ(t.white_area, r(7, 16));
  EXPECT_EQ(t.black_area, r(7, 16));
  EXPECT_EQ(t.neutral_area, r(1, 8));
  EXPECT_EQ(t.winner, Winner::Tie);

  Rect<Q> strip(r(2), r(1));
  auto u = score(GamePosition<Q>{strip, {{r(1, 2), r(1, 2)}, {r(3, 2), r(1, 2)}}, {{r(1), r(1, 2)}, {r(1, 2), r(9, 10)}}});
  EXPECT_LT(u.black_area, r(1));
  EXPECT_EQ(u.winner, Winner::White);
  expect_conserved(u, strip);

  EXPECT_THROW(score(GamePosition<Q>{unit(), {{r(1, 2), r(1, 2)}}, {{r(1, 2), r(1, 2)}}}), GameError);
}

TEST(Score, SameColourDegeneracyIsSplit) {
  // Two white points on a diagonal leave no neutral zone.
  auto s = score(GamePosition<Q>{unit(), {{r(1, 4), r(1, 4)}, {r(3, 4), r(3, 4)}}, {{r(1, 8), r(7, 8)}}});
  EXPECT_EQ(s.neutral_area, 0);
  expect_conserved(s, unit());
}

TEST(Verdict, Theory) {
  EXPECT_EQ(verdict(3, r(3)), Winner::White);
  EXPECT_EQ(verdict(3, r(29, 10)), Winner::Black);
  EXPECT_EQ(verdict(1, r(1)), Winner::White);
  EXPECT_THROW(verdict(0, r(1)), GameError);
}

TEST(WhiteOptimal, Grids) {
  auto w = white_optimal(2, Rect<Q>(r(2), r(1)));
  EXPECT_EQ(w.points, (std::vector<Point<Q>>{{r(1, 2), r(1, 2)}, {r(3, 2), r(1, 2)}}));
  auto w3 = white_optimal(3, Rect<Q>(r(3), r(1)));
  EXPECT_EQ(w3.points[2].x, r(5, 2));
  EXPECT_THROW(white_optimal(2, unit()), GameError);
}

TEST(Steal, Examples) {
  std::vector<Point<Q>> w{{r(1, 2), r(1, 2)}};
  auto s = steal_point(0, HalfId::Left, r(1, 100), w, unit());
  EXPECT_EQ(s.point.y, r(1, 2));
  EXPECT_EQ(s.point.x, r(1, 2) - s.delta);
  EXPECT_EQ(s.stolen, r(1, 2) - s.delta / 2);
  EXPECT_GE(s.stolen, r(49, 100));
  EXPECT_FALSE(s.clamped);

  // Smaller eps never steals less.
  Q prev = 0;
  for (long k : {4, 16, 64, 256}) {
    auto t = steal_point(0, HalfId::Left, r(1, k), w, unit());
    EXPECT_GE(t.stolen, prev);
    prev = t.stolen;
  }

  Rect<Q> strip(r(2), r(1));
  auto g = make_grid(1, 2, strip).points;
  auto u = steal_point(0, HalfId::Right, r(1, 50), g, strip);
  EXPECT_GE(u.stolen, r(1, 2) - r(1, 50));

  auto big = steal_point(0, HalfId::Top, r(10), w, unit());
  EXPECT_TRUE(big.clamped);
  EXPECT_THROW(steal_point(0, HalfId::Top, r(0), w, unit()), GameError);
}

TEST(Steal, RandomWhiteSets) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(1, 47);
  for (int trial = 0; trial < 20; ++trial) {
    Rect<Q> rect(r(3, 2), r(1));
    std::vector<Point<Q>> w;
    while (w.size() < 3) {
      Point<Q> p{r(coord(rng), 32), r(coord(rng) % 31 + 1, 32)};
      if (std::find(w.begin(), w.end(), p) == w.end()) w.push_back(p);
    }
    const auto half = static_cast<HalfId>(trial % 4);
    const Q eps = r(1, 10 + trial);
    auto halves = white_halves(w, rect);
    if (halves[trial % 3][trial % 4] == 0) continue;
    auto s = steal_point(trial % 3, half, eps, w, rect);
    EXPECT_GE(s.stolen, s.half_area - eps);
  }
}

TEST(Halving, Examples) {
  Rect<Q> strip(r(2), r(1));
  auto clustered = halving_attack(std::vector<Point<Q>>{{r(1, 4), r(1, 2)}, {r(3, 4), r(1, 2)}}, strip);
  ASSERT_TRUE(clustered);
  EXPECT_GT(clustered->score.black_area, r(1));
  EXPECT_EQ(clustered->certificate, Certificate::HalvingAttack);
  EXPECT_EQ(clustered->black.size(), 2u);

  EXPECT_FALSE(halving_attack(make_grid(1, 3, Rect<Q>(r(3), r(1))).points, Rect<Q>(r(3), r(1))));

  auto g = make_grid(2, 2, unit()).points;
  g[1].x += r(1, 10);
  auto moved = halving_attack(g, unit());
  ASSERT_TRUE(moved);
  EXPECT_GT(moved->score.black_area, r(1, 2));
  expect_conserved(moved->score, unit());
}

TEST(DiagonalShift, P2Violation) {
  // Balanced 1 x 2 grid with bridge cells whose boundary arms are longer.
  Rect<Q> strip(r(2, 5) * 2, r(1));
  std::vector<Point<Q>> line = make_grid(1, 2, strip).points;  // arms 1/5 vs 1/2
  auto dl = white_diagram(line, strip);
  auto al = arms(line[0], dl.cells[0], strip);
  EXPECT_EQ(al[ArmDir::Top] - al[ArmDir::Left], r(3, 10));
  const Q target = strip.area() / 4;
  auto b = diagonal_shift_point(line[0], r(1, 10), Diagonal::NE, Bias::Horizontal);
  EXPECT_GT(black_cell_area(line, b, strip), target);
  EXPECT_FALSE(satisfies_p2(line, strip));
  EXPECT_TRUE(satisfies_p1(line, strip));

  // At rho = n every arm difference is zero and no offset wins.
  Rect<Q> square_cells(r(2), r(1));
  auto g = make_grid(1, 2, square_cells).points;
  for (auto dir : {Diagonal::NE, Diagonal::NW, Diagonal::SW, Diagonal::SE})
    for (long k = 4; k <= 64; k *= 2)
      for (auto bias : {Bias::Vertical, Bias::Horizontal}) {
        auto c = diagonal_shift_point(g[0], r(1, k), dir, bias);
        EXPECT_LT(black_cell_area(g, c, square_cells), r(1, 2));
      }
  EXPECT_THROW(diagonal_shift_point(g[0], r(0), Diagonal::NE), GameError);
}

TEST(GridCorner, TwoByTwo) {
  auto g = make_grid(2, 2, unit()).points;
  auto c = grid_corner_winning_point(g, unit());
  EXPECT_EQ(c.nominal, (Point<Q>{r(3, 8), r(5, 8)}));
  EXPECT_EQ(c.d, r(1, 4));
  EXPECT_EQ(c.nominal_area, r(9, 64));
  EXPECT_EQ(c.nominal_area, 2 * c.d * c.d + c.d * c.d / 4);
  EXPECT_EQ(c.nominal_cell, r(7, 64));
  EXPECT_GT(c.certified_area, r(1, 8));

  Rect<Q> wide(r(3, 2), r(1));
  auto g23 = make_grid(2, 3, wide).points;
  auto c23 = grid_corner_winning_point(g23, wide);
  EXPECT_EQ(c23.d, r(1, 4));
  EXPECT_GT(c23.certified_area, wide.area() / 12);

  Rect<Q> strip(r(3), r(1));
  EXPECT_THROW(grid_corner_winning_point(make_grid(1, 3, strip).points, strip), GameError);
}

TEST(GridBlackArea, Examples) {
  Rect<Q> rect(r(2), r(1));
  EXPECT_EQ(grid_black_area(r(1, 2), r(0), 2, rect, 0), r(1, 2));
  EXPECT_THROW(grid_black_area(r(0), r(0), 2, rect, 0), GameError);
  EXPECT_THROW(grid_black_area(r(3, 4), r(0), 2, rect, 0), GameError);
  // The printed closed form bounds the end slot; the exact cell is smaller.
  EXPECT_EQ(grid_black_area_bound(r(0), r(1, 4), 2, rect), r(29, 64));
  EXPECT_EQ(grid_black_area(r(0), r(1, 4), 2, rect, 0), r(53, 128));
  auto g = make_grid(1, 2, rect).points;
  EXPECT_EQ(black_cell_area(g, Point<Q>{r(1, 2), r(3, 4)}, rect), r(53, 128));
}

TEST(GridBlackArea, MatchesDiagram) {
  std::mt19937 rng(11);
  for (int n = 2; n <= 4; ++n) {
    Rect<Q> rect(r(n) + r(1, 2), r(1));
    auto g = make_grid(1, n, rect).points;
    const Q wp = rect.width / (2 * n), hp = r(1, 2);
    std::uniform_int_distribution<int> k(1, 63);
    for (int t = 0; t < 30; ++t) {
      Q x = wp * r(k(rng), 64), y = hp * r(k(rng), 64);
      if (x == y) continue;
      const int slot = t % (n - 1);
      Point<Q> b{g[slot].x + x, g[slot].y + y};
      EXPECT_EQ(grid_black_area(x, y, n, rect, slot), black_cell_area(g, b, rect)) << n << " " << x << " " << y;
    }
    Q x = hp / 3;
    Point<Q> b{g[0].x + x, g[0].y + x};
    EXPECT_EQ(grid_black_area(x, x, n, rect, 0), black_cell_area_half_neutral(g, b, rect));
  }
}

TEST(Audit, GridsPassP1P2) {
  for (int n = 1; n <= 4; ++n) {
    Rect<Q> rect(r(n) + r(1, 3), r(1));
    auto g = make_grid(1, n, rect).points;
    EXPECT_TRUE(satisfies_p1(g, rect));
    EXPECT_TRUE(satisfies_p2(g, rect));
  }
  EXPECT_TRUE(satisfies_p1(make_grid(2, 2, unit()).points, unit()));
  EXPECT_TRUE(satisfies_p2(make_grid(2, 2, unit()).points, unit()));
  auto moved = make_grid(1, 2, Rect<Q>(r(2), r(1))).points;
  moved[0].x = r(1, 3);
  EXPECT_FALSE(satisfies_p1(moved, Rect<Q>(r(2), r(1))));
}

TEST(FindWinningPoint, Examples) {
  auto g = make_grid(2, 2, unit()).points;
  SearchParams sp;
  sp.lattice_per_unit = 24;
  auto rep = find_winning_point(g, unit(), sp);
  ASSERT_TRUE(rep.point);
  EXPECT_GT(rep.area, r(1, 8));
  EXPECT_GT(rep.candidates, 0u);

  Rect<Q> strip(r(2), r(1));
  auto line = make_grid(1, 2, strip).points;
  auto none = find_winning_point(line, strip, sp);
  EXPECT_FALSE(none.point);
  EXPECT_EQ(none.best_area, r(1, 2));
  // Every centre-line point strictly between the two sites ties.
  EXPECT_EQ(none.best_candidate.y, r(1, 2));
  EXPECT_GT(none.best_candidate.x, r(1, 2));
  EXPECT_LT(none.best_candidate.x, r(3, 2));
  EXPECT_EQ(black_cell_area(line, Point<Q>{r(1), r(1, 2)}, strip), r(1, 2));
}

TEST(CompleteBlackSet, Examples) {
  auto g = make_grid(2, 2, unit()).points;
  auto c = grid_corner_winning_point(g, unit());
  auto out = complete_black_set(g, c.certified, Q(c.certified_area - r(1, 8)), unit());
  EXPECT_EQ(out.black.size(), 4u);
  EXPECT_GT(out.score.black_area, r(1, 2));
  EXPECT_EQ(out.certificate, Certificate::WinningPointPlusSteals);

  auto one = complete_black_set(std::vector<Point<Q>>{{r(1, 2), r(1, 2)}}, Point<Q>{r(1, 4), r(1, 2)}, r(1), unit());
  EXPECT_EQ(one.black.size(), 1u);
}

TEST(BestResponse, Examples) {
  SearchParams sp;
  sp.lattice_per_unit = 24;
  Rect<Q> strip(r(2), r(1));
  auto tie = black_best_response(make_grid(1, 2, strip).points, strip, sp);
  EXPECT_EQ(tie.certificate, Certificate::BestTieAttempt);
  EXPECT_EQ(tie.score.winner, Winner::White);

  Rect<Q> narrow(r(3, 2), r(1));
  auto win = black_best_response(make_grid(1, 2, narrow).points, narrow, sp);
  EXPECT_EQ(win.score.winner, Winner::Black);
  EXPECT_EQ(win.certificate, Certificate::WinningPointPlusSteals);

  auto uneven = black_best_response(std::vector<Point<Q>>{{r(1, 5), r(1, 2)}, {r(3, 5), r(3, 5)}, {r(9, 5), r(1, 3)}}, strip, sp);
  EXPECT_EQ(uneven.certificate, Certificate::HalvingAttack);
  EXPECT_EQ(uneven.score.winner, Winner::Black);
  expect_conserved(uneven.score, strip);
}
