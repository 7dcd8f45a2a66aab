#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scarcenet/dataset.hpp"
#include "scarcenet/metrics.hpp"
#include "scarcenet/network.hpp"
#include "scarcenet/trainers.hpp"

namespace scarcenet {

enum class LayoutProvenance { Table1, Table2, Generated };

struct ArchitectureLayout {
  std::vector<int> widths;
  LayoutProvenance provenance = LayoutProvenance::Generated;
  std::string label;  // e.g. "6x13-12"

  int total_neurons() const;
};

// The six fixed deep layouts of the first experiment (depths 2..7, 90
// neurons each).
const std::vector<ArchitectureLayout>& table1_architectures();

// The shallow sweep of the first experiment: single hidden layer, widths
// cycled over [min_width, max_width], all four trainers and all three hidden
// activations round-robin.
struct ShallowSweep {
  int min_width = 90;
  int max_width = 200;
};
inline constexpr std::array<TrainerKind, 4> kShallowTrainers = {
    TrainerKind::LevenbergMarquardt, TrainerKind::GradientDescent, TrainerKind::QuasiNewton,
    TrainerKind::BayesianRegularization};
inline constexpr std::array<Activation, 3> kShallowActivations = {
    Activation::LogSigmoid, Activation::TanSigmoid, Activation::PositiveLinear};

struct ShallowVariant {
  int width = 0;
  Activation activation = Activation::LogSigmoid;
  TrainerKind trainer = TrainerKind::LevenbergMarquardt;
};
// Deterministic roster entry for shallow replicate `index`.
ShallowVariant shallow_variant(const ShallowSweep& sweep, std::size_t index);

// Second-experiment architecture grid for 90, 120 or 150 neurons; keys are
// the depths 1..10 and 15.
std::map<int, ArchitectureLayout> table2_architectures(int neurons);

// floor(total/depth) everywhere, remainder added one-per-layer from the
// front.
ArchitectureLayout distribute_neurons(int total, int depth);

struct Exp1Config {
  std::set<int> sets = {1, 2, 3, 4, 5};
  std::set<int> depths = {1, 2, 3, 4, 5, 6, 7};  // 1 = the shallow sweep row
  int dnn_replicates = 20;
  int shallow_count = 2000;
  std::uint64_t base_seed = 1;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

struct Exp2Config {
  std::set<int> budgets = {90, 120, 150};
  std::set<int> depths = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15};
  int replicates = 20;
  std::uint64_t base_seed = 1;
  unsigned jobs = 0;
};

struct ReplicateOutcome {
  int replicate = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;  // failure message when !ok
  double e_a = 0;
  double e_max = 0;
  StopReason stop_reason = StopReason::MaxEpochs;
  int epochs = 0;
  // Shallow-sweep rows record their roster position.
  std::optional<ShallowVariant> variant;
};

struct CellStats {
  int successes = 0;
  int failures = 0;
  int best_replicate = -1;  // index into the outcome list, -1 if none succeeded
  double best_e_a = 0;
  double best_e_max = 0;
  double mean_e_a = 0;
  double median_e_a = 0;
  double std_e_a = 0;
};

struct CellReport {
  int group = 0;  // experiment 1: set number; experiment 2: neuron budget
  int depth = 0;
  std::string architecture;  // label of the trained layout ("sweep 90..200" for the shallow row)
  std::vector<ReplicateOutcome> outcomes;
  CellStats stats;
};

struct ExperimentReport {
  std::string experiment;  // "exp1" | "exp2"
  std::string config_json;
  std::uint64_t base_seed = 0;
  std::vector<CellReport> cells;
  // Experiment 2 only: test-set predictions of the overall best network.
  std::vector<PerSampleError> best_predictions;
  std::string best_cell;  // "n120/d5/rep7" style key of the best network
  std::string dataset_hash;
  std::string timestamp_utc;
};

ExperimentReport run_experiment1(const Exp1Config& cfg);
ExperimentReport run_experiment2(const Exp2Config& cfg);

// argmin of E_a; ties resolved by smaller E_max, then smaller index.
std::size_t select_best(std::span<const EvalResult> evaluations);

enum class ReportFormat { Csv, Markdown };

// Writes exp{1,2}_table.{csv|md} plus figure2_data.csv (experiment 1),
// best_predictions.csv (experiment 2) and run_meta.json.
void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& out_dir);

}  // namespace scarcenet
