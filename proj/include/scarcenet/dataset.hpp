#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scarcenet {

// One footing load test: geometry, soil state, measured ultimate bearing
// capacity. All fields strictly positive.
struct Sample {
  double b = 0;               // footing width B, m
  double d = 0;               // footing depth D, m
  double l_over_b = 0;        // length-to-width ratio L/B
  double unit_weight = 0;     // soil unit weight gamma, kN/m^3
  double friction_angle = 0;  // internal friction angle phi, degrees
  double qu = 0;              // ultimate bearing capacity q_u, kPa

  std::array<double, 5> inputs() const { return {b, d, l_over_b, unit_weight, friction_angle}; }
  bool operator==(const Sample&) const = default;
};

// Row order is significant: the split protocols index into it.
struct Dataset {
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
  const Sample& operator[](std::size_t i) const { return samples[i]; }
  bool operator==(const Dataset&) const = default;
};

inline constexpr std::string_view kCsvHeader = "B_m,D_m,L_over_B,gamma_kN_m3,phi_deg,qu_kPa";

// The built-in 50-record laboratory dataset the harness trains on.
const Dataset& embedded_gandhi();

Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(std::string_view text, std::string_view origin = "<memory>");
std::string to_csv(const Dataset& ds);
void write_csv(const Dataset& ds, const std::filesystem::path& path);

// sha1 of a git-style blob over the canonical CSV; fingerprints a run's data.
std::string dataset_git_hash(const Dataset& ds);

// Contiguous blocks A..F (sizes 9,9,8,8,8,8) over the 50-sample dataset.
std::array<std::vector<std::size_t>, 6> partition_blocks(const Dataset& ds);

struct SplitPlan {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

// Experiment 1, sets 1..5: test on the trailing blocks per the protocol
// table, seeded random 80/20 train/validation split inside the training pool.
SplitPlan experiment1_split(const Dataset& ds, int set_number, std::uint64_t seed);

// Experiment 2: five fixed training samples, one fixed validation sample,
// the remaining 44 are the test set.
SplitPlan experiment2_split(const Dataset& ds);

// Per-feature min-max scaling of the 5 inputs and the target to [0,1].
class Normalizer {
 public:
  // Validates max > min for every feature.
  Normalizer(const std::array<double, 6>& mins, const std::array<double, 6>& maxs);

  std::array<double, 5> transform_input(const Sample& s) const;
  double transform_target(double qu) const;
  double inverse_output(double y_scaled) const;

  const std::array<double, 6>& mins() const { return min_; }
  const std::array<double, 6>& maxs() const { return max_; }
  bool operator==(const Normalizer&) const = default;

 private:
  std::array<double, 6> min_{}, max_{};
};

Normalizer fit_normalizer(const Dataset& ds);
// Fit on a subset (the training pool); leaves validation/test untouched.
Normalizer fit_normalizer(const Dataset& ds, std::span<const std::size_t> indices);

}  // namespace scarcenet
