#include <doctest.h>

#include "vecmap/fitter.hpp"
#include "vecmap/losses.hpp"
#include "vecmap/metrics.hpp"
#include "vecmap/scene_io.hpp"
#include "vecmap/scenegen.hpp"

using namespace vecmap;

TEST_CASE("shipped defaults") {
  CHECK(APConfig{}.thresholds == std::vector<double>{0.5, 1.0, 1.5});
  CHECK(APConfig{}.interpolation_points == 101);
  CHECK(kDefaultPointsPerElement == 20);
  CHECK(SceneSpec{}.n_points == 20);
  CHECK(MapScene{}.n_points == 20);
  CHECK(SceneFile{}.n_points == 20);
  CHECK(kNumInstanceSlots == 50);

  const LossWeights w;
  CHECK(w.classification == 2.0);
  CHECK(w.point2point == 5.0);
  CHECK(w.direction == 5e-3);
  CHECK(FitConfig{}.weights.classification == 2.0);
  CHECK(FitConfig{}.weights.point2point == 5.0);
  CHECK(FitConfig{}.weights.direction == 5e-3);

  const CostConfig cost;
  CHECK(cost.position_cost == PositionCost::Point2Point);
  CHECK(cost.focal_gamma == 2.0);
  CHECK(cost.focal_alpha == 0.25);
}
