#pragma once

#include <span>
#include <vector>

namespace scarcenet {

struct PerSampleError {
  double target = 0;      // measured q_u, kPa
  double prediction = 0;  // network output, kPa
  double ape = 0;         // absolute percentage error
};

struct EvalResult {
  double e_a = 0;       // mean absolute percentage error, percent
  double e_max = 0;     // maximum absolute percentage error, percent
  double accuracy = 0;  // 100 - e_a
  std::vector<PerSampleError> per_sample;
};

// (100/n) * sum |t_i - p_i| / t_i. Targets must be strictly positive.
double mape(std::span<const double> targets, std::span<const double> predictions);
double max_ape(std::span<const double> targets, std::span<const double> predictions);
// 100 - e_a; negative results are passed through unchanged.
double accuracy(double e_a);

EvalResult evaluate(std::span<const double> targets, std::span<const double> predictions);

}  // namespace scarcenet
