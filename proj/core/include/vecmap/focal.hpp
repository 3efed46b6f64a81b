#pragma once

namespace vecmap {

// Added inside the logarithms so that scores of exactly 0 or 1 stay finite.
inline constexpr double kFocalEpsilon = 1e-12;

struct FocalParams {
  double gamma = 2.0;
  double alpha = 0.25;
};

// Sigmoid focal loss of one class slot with score p (post-sigmoid):
//   positive target: alpha * (1 - p)^gamma * -log(p + eps)
//   negative target: (1 - alpha) * p^gamma * -log(1 - p + eps)
double focal_positive(double p, const FocalParams& params);
double focal_negative(double p, const FocalParams& params);

// Derivatives of the above with respect to p.
double focal_positive_grad(double p, const FocalParams& params);
double focal_negative_grad(double p, const FocalParams& params);

}  // namespace vecmap
