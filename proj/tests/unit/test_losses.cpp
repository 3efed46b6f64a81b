#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vecmap/losses.hpp"

using namespace vecmap;

namespace {

MapElement random_element(std::mt19937_64& rng, ElementClass cls, int n) {
  return {cls, kind_of(cls), testing::random_points(rng, n)};
}

PredictedElement one_hot(const MapElement& gt) {
  PredictedElement p;
  p.scores[class_index(gt.cls)] = 1.0;
  p.points = gt.points;
  return p;
}

// Perfect predictions for gts plus `extra` zero-score slots.
std::vector<PredictedElement> perfect(const std::vector<MapElement>& gts, int extra) {
  std::vector<PredictedElement> preds;
  for (const auto& g : gts) preds.push_back(one_hot(g));
  for (int i = 0; i < extra; ++i) {
    PredictedElement p;
    p.points.assign(gts.front().points.size(), Point2D{0.5, 0.5});
    preds.push_back(p);
  }
  return preds;
}

int edge_count(const std::vector<MapElement>& gts) {
  int n = 0;
  for (const auto& g : gts) {
    n += g.kind == ElementKind::Polygon ? static_cast<int>(g.points.size())
                                        : static_cast<int>(g.points.size()) - 1;
  }
  return n;
}

}  // namespace

TEST_CASE("classification loss") {
  std::mt19937_64 rng(1);
  const std::vector<MapElement> gts{random_element(rng, ElementClass::Divider, 5)};
  const auto preds = perfect(gts, 3);
  const auto match = hierarchical_match(preds, gts);
  CHECK(classification_loss(preds, gts, match) < 1e-20);

  PredictedElement half;
  half.scores = {0.5, 0.5, 0.5};
  half.points = testing::random_points(rng, 5);
  const std::vector<PredictedElement> one{half};
  const std::vector<MapElement> ped{random_element(rng, ElementClass::PedCrossing, 5)};
  const auto m = hierarchical_match(one, ped);
  // Positive slot for class 0 plus two negative slots, each from the formula.
  CHECK(classification_loss(one, ped, m) ==
        doctest::Approx(0.3032518914941011).epsilon(1e-12));

  std::vector<PredictedElement> silent(4);
  for (auto& p : silent) p.points = testing::random_points(rng, 5);
  CHECK(classification_loss(silent, std::vector<MapElement>{},
                            hierarchical_match(silent, std::vector<MapElement>{})) == 0.0);
}

TEST_CASE("point2point loss") {
  std::mt19937_64 rng(2);
  const std::vector<MapElement> gts{random_element(rng, ElementClass::Divider, 20)};
  auto preds = perfect(gts, 2);
  CHECK(point2point_loss(preds, gts, hierarchical_match(preds, gts)) == 0.0);

  MapElement line{ElementClass::Divider, ElementKind::Polyline, {}};
  for (int j = 0; j < 20; ++j) line.points.push_back({0.3, 0.02 + 0.045 * j});
  const std::vector<MapElement> one{line};
  auto shifted = perfect(one, 0);
  for (auto& p : shifted[0].points) p.x += 0.1;
  CHECK(point2point_loss(shifted, one, hierarchical_match(shifted, one)) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("point2point loss matches the exhaustive ordering oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cfg = testing::random_loss_configuration(rng);
    const auto match = hierarchical_match(cfg.preds, cfg.gts);
    double expected = 0.0;
    for (const auto& pair : match.instance.pairs) {
      expected += testing::brute_point_match(cfg.preds[pair.pred].points,
                                             cfg.gts[pair.gt].points, cfg.gts[pair.gt].kind)
                      .cost;
    }
    CHECK(point2point_loss(cfg.preds, cfg.gts, match) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("edge direction loss for identical and rotated predictions") {
  std::mt19937_64 rng(4);
  const std::vector<MapElement> gts{random_element(rng, ElementClass::PedCrossing, 6),
                                    random_element(rng, ElementClass::Boundary, 6)};
  const auto preds = perfect(gts, 1);
  const auto match = hierarchical_match(preds, gts);
  CHECK(edge_direction_loss(preds, gts, match) == doctest::Approx(-(6 + 5)).epsilon(1e-12));

  // 180 degree rotation about the centroid, supervised in the stored order.
  auto rotated = preds;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    Point2D centroid{};
    for (const auto& p : gts[i].points) centroid = centroid + p * (1.0 / 6.0);
    for (auto& p : rotated[i].points) p = centroid * 2.0 - p;
  }
  HierarchicalMatch stored;
  stored.instance.pairs = {{0, 0}, {1, 1}};
  stored.point_level = {{}, {}};
  CHECK(edge_direction_loss(rotated, gts, stored) == doctest::Approx(6 + 5).epsilon(1e-12));
}

TEST_CASE("edge direction loss matches an explicit edge-by-edge evaluation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cfg = testing::random_loss_configuration(rng);
    double expected = 0.0;
    for (std::size_t k = 0; k < cfg.match.instance.pairs.size(); ++k) {
      const auto& pair = cfg.match.instance.pairs[k];
      const auto& gt = cfg.gts[pair.gt];
      const auto& pred = cfg.preds[pair.pred].points;
      const int n = static_cast<int>(pred.size());
      const auto map = cfg.match.point_level[k].perm.index_map(n);
      const int count = gt.kind == ElementKind::Polygon ? n : n - 1;
      for (int j = 0; j < count; ++j) {
        const Point2D pe = pred[j] - pred[(j + 1) % n];
        const Point2D ge = gt.points[map[j]] - gt.points[map[(j + 1) % n]];
        expected -= (pe.x * ge.x + pe.y * ge.y) /
                    (std::hypot(pe.x, pe.y) * std::hypot(ge.x, ge.y));
      }
    }
    CHECK(edge_direction_loss(cfg.preds, cfg.gts, cfg.match) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("degenerate edges contribute nothing") {
  CHECK(cosine_similarity({0, 0}, {1, 0}) == 0.0);
  CHECK(cosine_similarity({1e-9, 0}, {1, 0}) == 0.0);
  const MapElement gt{ElementClass::Divider, ElementKind::Polyline, {{0, 0}, {1, 0}, {2, 0}}};
  PredictedElement collapsed;
  collapsed.points.assign(3, Point2D{0.5, 0.5});
  const std::vector<PredictedElement> preds{collapsed};
  const std::vector<MapElement> gts{gt};
  HierarchicalMatch match;
  match.instance.pairs = {{0, 0}};
  match.point_level = {{}};
  CHECK(edge_direction_loss(preds, gts, match) == 0.0);
  const auto grads = loss_gradients(preds, gts, match);
  for (const auto& g : grads.d_points[0]) {
    CHECK(std::isfinite(g.x));
    CHECK(std::isfinite(g.y));
  }
}

TEST_CASE("total loss") {
  std::mt19937_64 rng(6);
  const auto cfg = testing::random_loss_configuration(rng);
  CHECK(total_loss(cfg.preds, cfg.gts, cfg.match, {0, 0, 0}).total == 0.0);

  const auto parts = total_loss(cfg.preds, cfg.gts, cfg.match);
  CHECK(parts.total == 2.0 * parts.cls + 5.0 * parts.p2p + 0.005 * parts.dir);
  CHECK(parts.cls == classification_loss(cfg.preds, cfg.gts, cfg.match));
  CHECK(parts.p2p == point2point_loss(cfg.preds, cfg.gts, cfg.match));
  CHECK(parts.dir == edge_direction_loss(cfg.preds, cfg.gts, cfg.match));

  const std::vector<MapElement> gts{random_element(rng, ElementClass::PedCrossing, 20),
                                    random_element(rng, ElementClass::Divider, 20)};
  const auto preds = perfect(gts, 3);
  const auto m = hierarchical_match(preds, gts);
  const auto at_min = total_loss(preds, gts, m);
  CHECK(at_min.total == doctest::Approx(5e-3 * -edge_count(gts)).epsilon(1e-12));
}

TEST_CASE("total loss is linear in the weights") {
  std::mt19937_64 rng(7);
  const auto cfg = testing::random_loss_configuration(rng);
  const auto l1 = total_loss(cfg.preds, cfg.gts, cfg.match, {1, 0, 0});
  const auto l2 = total_loss(cfg.preds, cfg.gts, cfg.match, {0, 1, 0});
  const auto l3 = total_loss(cfg.preds, cfg.gts, cfg.match, {0, 0, 1});
  const auto mix = total_loss(cfg.preds, cfg.gts, cfg.match, {0.7, 3.0, 2.5});
  CHECK(mix.total == doctest::Approx(0.7 * l1.total + 3.0 * l2.total + 2.5 * l3.total)
                         .epsilon(1e-12));
}

TEST_CASE("losses are invariant to ground-truth reordering") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> size(3, 20);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<MapElement> gts;
    std::vector<PredictedElement> preds;
    const int n = size(rng);
    for (int c = 0; c < kNumClasses; ++c) {
      gts.push_back(random_element(rng, class_from_index(c), n));
      preds.push_back(testing::noisy_copy(rng, gts.back(), 0.03));
      REQUIRE(testing::minimizer_count(preds.back().points, gts.back()) == 1);
    }
    const auto base = total_loss(preds, gts, hierarchical_match(preds, gts));
    for (std::size_t m = 0; m < 2; ++m) {
      auto moved_gts = gts;
      for (auto& g : moved_gts) {
        const auto group = permutation_group(g.kind, static_cast<int>(g.points.size()));
        g.points = apply_permutation(g.points, group.members[m == 0 ? 1 : group.members.size() - 1]);
      }
      const auto moved = total_loss(preds, moved_gts, hierarchical_match(preds, moved_gts));
      CHECK(std::fabs(moved.p2p - base.p2p) < 1e-9);
      CHECK(std::fabs(moved.dir - base.dir) < 1e-9);
      CHECK(std::fabs(moved.cls - base.cls) < 1e-12);
    }
  }
}

TEST_CASE("exact point-cost ties are broken by enumeration order") {
  // In every coordinate both predictions lie below both ground-truth points,
  // so pairing pred 0 with gt 1 or gt 2 costs the same. Forward-1 and
  // Reverse-0 tie; the earlier one in enumeration order wins.
  const std::vector<Point2D> pred{{0.41717950412222204, 0.22297624755410675},
                                  {0.87751772333511369, 0.26455171698828811},
                                  {0.17575920073520829, 0.48844989893064678}};
  const MapElement gt{ElementClass::PedCrossing, ElementKind::Polygon,
                      {{0.26311446020354978, 0.62922759707634834},
                       {0.91034744884983121, 0.36732369091714601},
                       {0.99659439081734447, 0.44362966585386354}}};
  CHECK(testing::minimizer_count(pred, gt) == 2);
  CHECK(point_level_match(pred, gt).perm == PermutationDescriptor{Direction::Forward, 1});
  // The tied orderings align different edges, so the direction loss of a
  // tied pair depends on how the ground truth is stored; p2p does not.
  MapElement stored = gt;
  stored.points = apply_permutation(gt.points, {Direction::Reverse, 0});
  PredictedElement p;
  p.points = pred;
  const std::vector<PredictedElement> preds{p};
  const std::vector<MapElement> a{gt};
  const std::vector<MapElement> b{stored};
  const auto la = total_loss(preds, a, hierarchical_match(preds, a));
  const auto lb = total_loss(preds, b, hierarchical_match(preds, b));
  CHECK(la.p2p == lb.p2p);
  CHECK(la.dir != lb.dir);
}

TEST_CASE("loss bounds") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cfg = testing::random_loss_configuration(rng);
    const auto l = total_loss(cfg.preds, cfg.gts, cfg.match);
    int paired = 0;
    for (const auto& pair : cfg.match.instance.pairs) {
      const auto& g = cfg.gts[pair.gt];
      paired += static_cast<int>(edges(g.points, g.kind).size());
    }
    CHECK(l.p2p >= 0.0);
    CHECK(l.dir >= -paired - 1e-12);
    CHECK(l.dir <= paired + 1e-12);
  }
}

TEST_CASE("gradients at the minimum and for unmatched slots") {
  std::mt19937_64 rng(10);
  const std::vector<MapElement> gts{random_element(rng, ElementClass::PedCrossing, 8),
                                    random_element(rng, ElementClass::Divider, 8)};
  const auto preds = perfect(gts, 2);
  const auto match = hierarchical_match(preds, gts);
  const auto grads = loss_gradients(preds, gts, match, {0, 5, 0});
  for (const auto& row : grads.d_points) {
    for (const auto& g : row) {
      CHECK(g.x == 0.0);
      CHECK(g.y == 0.0);
    }
  }
  // Identical edges give exactly zero direction gradient too.
  const auto full = loss_gradients(preds, gts, match);
  for (const auto& row : full.d_points) {
    for (const auto& g : row) {
      CHECK(g.x == 0.0);
      CHECK(g.y == 0.0);
    }
  }

  const auto cfg = testing::random_loss_configuration(rng);
  const auto g = loss_gradients(cfg.preds, cfg.gts, cfg.match);
  std::vector<bool> matched(cfg.preds.size(), false);
  for (const auto& pair : cfg.match.instance.pairs) matched[pair.pred] = true;
  for (std::size_t i = 0; i < cfg.preds.size(); ++i) {
    if (matched[i]) continue;
    for (const auto& d : g.d_points[i]) {
      CHECK(d.x == 0.0);
      CHECK(d.y == 0.0);
    }
  }
}

TEST_CASE("gradients agree with central differences") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cfg = testing::random_loss_configuration(rng);
    const auto check = testing::check_gradients(cfg);
    CHECK(check.points_error < 1e-4);
    CHECK(check.scores_error < 1e-4);
  }
}
