#include "scarcenet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scarcenet/errors.hpp"

namespace scarcenet {

namespace {

void check_pairs(std::span<const double> targets, std::span<const double> predictions) {
  if (targets.empty() || targets.size() != predictions.size()) {
    throw ShapeError("metrics: need equal, non-zero numbers of targets and predictions");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!(targets[i] > 0) || !std::isfinite(targets[i])) {
      throw NumericError("metrics: target " + std::to_string(i) + " must be positive and finite");
    }
    if (!std::isfinite(predictions[i])) {
      throw NumericError("metrics: prediction " + std::to_string(i) + " is not finite");
    }
  }
}

double ape(double target, double prediction) { return 100.0 * std::abs(target - prediction) / target; }

}  // namespace

double mape(std::span<const double> targets, std::span<const double> predictions) {
  check_pairs(targets, predictions);
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) sum += ape(targets[i], predictions[i]);
  return sum / static_cast<double>(targets.size());
}

double max_ape(std::span<const double> targets, std::span<const double> predictions) {
  check_pairs(targets, predictions);
  double worst = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) worst = std::max(worst, ape(targets[i], predictions[i]));
  return worst;
}

double accuracy(double e_a) {
  if (!(e_a >= 0)) throw NumericError("accuracy: E_a must be non-negative");
  return 100.0 - e_a;
}

EvalResult evaluate(std::span<const double> targets, std::span<const double> predictions) {
  check_pairs(targets, predictions);
  EvalResult result;
  result.per_sample.reserve(targets.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double e = ape(targets[i], predictions[i]);
    result.per_sample.push_back({targets[i], predictions[i], e});
    sum += e;
    result.e_max = std::max(result.e_max, e);
  }
  result.e_a = sum / static_cast<double>(targets.size());
  result.accuracy = 100.0 - result.e_a;
  return result;
}

}  // namespace scarcenet
