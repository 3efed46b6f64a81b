#include "vecmap/focal.hpp"

#include <cmath>

namespace vecmap {
namespace {

// d/dx x^gamma, with the gamma == 0 case pinned to 0 so x == 0 is finite.
double pow_grad(double x, double gamma) {
  if (gamma == 0.0) return 0.0;
  return gamma * std::pow(x, gamma - 1.0);
}

}  // namespace

double focal_positive(double p, const FocalParams& params) {
  return params.alpha * std::pow(1.0 - p, params.gamma) *
         -std::log(p + kFocalEpsilon);
}

double focal_negative(double p, const FocalParams& params) {
  return (1.0 - params.alpha) * std::pow(p, params.gamma) *
         -std::log(1.0 - p + kFocalEpsilon);
}

double focal_positive_grad(double p, const FocalParams& params) {
  const double q = 1.0 - p;
  return params.alpha * (-pow_grad(q, params.gamma) * -std::log(p + kFocalEpsilon) +
                         std::pow(q, params.gamma) * (-1.0 / (p + kFocalEpsilon)));
}

double focal_negative_grad(double p, const FocalParams& params) {
  return (1.0 - params.alpha) *
         (pow_grad(p, params.gamma) * -std::log(1.0 - p + kFocalEpsilon) +
          std::pow(p, params.gamma) / (1.0 - p + kFocalEpsilon));
}

}  // namespace vecmap
