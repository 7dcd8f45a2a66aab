// Acceptance suite: one check per criterion, each printed as a pass/fail
// line. Run through CTest or directly; exits non-zero when a criterion fails.
//
// The stochastic criteria (6-8) train real networks at a reduced scale with a
// fixed base seed; the deterministic ones pin printed values exactly.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scarcenet/dataset.hpp"
#include "scarcenet/errors.hpp"
#include "scarcenet/experiments.hpp"
#include "scarcenet/metrics.hpp"
#include "scarcenet/network.hpp"
#include "scarcenet/trainers.hpp"
#include "scarcenet/util.hpp"

using namespace scarcenet;

namespace {

// ---- reference data -------------------------------------------------------

// The 50 published dataset rows, independently transcribed, in canonical CSV
// field order (B, D, L/B, gamma, phi, qu).
const char* const kExpectedRows[50] = {
    "0.0585,0.029,5.95,15.7,34,58.5",
    "0.0585,0.058,5.95,17.1,42.5,211",
    "0.094,0.047,6,16.5,39.5,155.8",
    "0.094,0.094,6,17.1,42.5,279.6",
    "0.152,0.075,5.95,15.7,34,98.2",
    "0.152,0.15,5.95,17.1,42.5,400.6",
    "0.094,0.047,1,16.1,37,98.8",
    "0.094,0.094,1,17.1,42.5,295.6",
    "0.152,0.15,1,16.5,39.5,264.5",
    "0.094,0.047,1,15.7,34,67.7",
    "0.152,0.075,5.95,16.5,39.5,211.2",
    "0.0585,0.058,5.95,16.5,39.5,142.9",
    "0.152,0.15,1,17.1,42.5,423.6",
    "0.152,0.075,1,15.7,34,91.2",
    "0.094,0.047,6,16.1,37,104.8",
    "0.0585,0.029,5.95,16.1,37,82.5",
    "0.094,0.047,6,15.7,34,74.7",
    "0.152,0.15,5.95,16.8,41.5,342.5",
    "0.094,0.047,6,16.8,41.5,206.8",
    "0.152,0.075,1,16.1,37,135.2",
    "0.094,0.047,1,16.5,39.5,147.8",
    "0.152,0.15,5.95,16.1,37,176.4",
    "0.0585,0.029,5.95,16.8,41.5,157.5",
    "0.152,0.075,1,16.8,41.5,276.3",
    "0.094,0.094,1,16.8,41.5,253.6",
    "0.0585,0.029,5.95,16.5,39.5,121.5",
    "0.094,0.094,6,15.7,34,91.5",
    "0.152,0.15,5.95,15.7,34,122.3",
    "0.094,0.047,1,16.8,41.5,196.8",
    "0.152,0.075,5.95,16.8,41.5,285.3",
    "0.094,0.094,6,16.5,39.5,185.6",
    "0.0585,0.058,5.95,16.8,41.5,184.9",
    "0.094,0.094,1,15.7,34,90.5",
    "0.152,0.15,1,15.7,34,124.4",
    "0.152,0.15,1,16.8,41.5,361.5",
    "0.0585,0.058,5.95,15.7,34,70.91",
    "0.152,0.075,5.95,17.1,42.5,335.3",
    "0.152,0.15,1,16.1,37,182.4",
    "0.094,0.094,1,16.1,37,131.5",
    "0.094,0.094,6,16.8,41.5,244.6",
    "0.0585,0.029,5.95,17.1,42.5,180.5",
    "0.094,0.047,6,17.1,42.5,235.6",
    "0.152,0.15,5.95,16.5,39.5,254.5",
    "0.094,0.094,1,16.5,39.5,191.6",
    "0.152,0.075,1,16.5,39.5,201.2",
    "0.0585,0.058,5.95,16.1,37,98.93",
    "0.094,0.094,6,16.1,37,127.5",
    "0.152,0.075,5.95,16.1,37,143.3",
    "0.094,0.047,1,17.1,42.5,228.8",
    "0.152,0.075,1,17.1,42.5,325.3",
};

// sha1 of the canonical CSV emitted by `dataset show` (header + 50 rows).
const char kDatasetShaExpected[] = "bf03241f40444eaed258dd0fcaec332cebee2101";

struct PublishedPrediction {
  double target;
  double prediction;
  double printed_ea;
};

// The published 44 predictions of the best second-experiment network,
// with their printed per-row errors.
const PublishedPrediction kPublished44[] = {
    {155.8, 150.95, 3.11},
    {295.6, 260.38, 11.92},
    {67.7, 67.19, 0.75},
    {279.6, 267.80, 4.22},
    {98.93, 97.04, 1.91},
    {127.5, 136.27, 6.88},
    {143.3, 152.31, 6.29},
    {228.8, 220.96, 3.42},
    {325.3, 274.85, 15.51},
    {180.5, 191.47, 6.08},
    {235.6, 229.53, 2.58},
    {254.5, 272.45, 7.05},
    {191.6, 183.65, 4.15},
    {201.2, 201.94, 0.37},
    {121.5, 119.26, 1.84},
    {91.5, 90.54, 1.04},
    {122.3, 154.96, 26.70},
    {196.8, 186.91, 5.02},
    {285.3, 254.30, 10.86},
    {185.6, 192.42, 3.68},
    {184.9, 183.83, 0.58},
    {90.5, 85.65, 5.36},
    {124.4, 147.04, 18.20},
    {361.5, 297.88, 17.60},
    {70.91, 66.60, 6.07},
    {335.3, 281.61, 16.01},
    {182.4, 210.73, 15.53},
    {131.5, 128.92, 1.96},
    {244.6, 237.86, 2.75},
    {82.5, 82.94, 0.54},
    {74.7, 70.80, 5.23},
    {342.5, 303.46, 11.40},
    {206.8, 195.70, 5.37},
    {135.2, 144.45, 6.84},
    {147.8, 143.04, 3.22},
    {176.4, 219.40, 24.38},
    {157.5, 158.24, 0.47},
    {276.3, 246.40, 10.82},
    {253.6, 229.45, 9.52},
    {211.2, 210.67, 0.25},
    {142.9, 140.49, 1.69},
    {423.6, 316.17, 25.36},
    {91.2, 95.66, 4.90},
    {104.8, 104.27, 0.51},
};

// Printed second-experiment architecture grid, written in the table's own
// compressed notation and expanded by this suite independently of the
// library's hardcoded layouts.
const std::map<int, std::map<int, const char*>> kPrintedGrid = {
    {90,
     {{1, "90"},
      {2, "2x45"},
      {3, "3x30"},
      {4, "2x23-2x22"},
      {5, "5x18"},
      {6, "6x15"},
      {7, "6x13-12"},
      {8, "6x11-2x12"},
      {9, "9x10"},
      {10, "10x9"},
      {15, "15x6"}}},
    {120,
     {{1, "120"},
      {2, "2x60"},
      {3, "3x40"},
      {4, "4x30"},
      {5, "5x24"},
      {6, "6x20"},
      {7, "6x17-18"},
      {8, "8x15"},
      {9, "6x13-3x14"},
      {10, "10x12"},
      {15, "15x8"}}},
    {150,
     {{1, "150"},
      {2, "2x75"},
      {3, "3x50"},
      {4, "2x38-2x37"},
      {5, "5x30"},
      {6, "6x25"},
      {7, "3x22-4x21"},
      {8, "6x19-2x18"},
      {9, "6x17-3x16"},
      {10, "10x15"},
      {15, "15x10"}}},
};

const std::map<int, const char*> kPrintedTable1 = {
    {2, "45-45"},          {3, "30-30-30"},          {4, "22-24-22-22"},
    {5, "18-18-18-18-18"}, {6, "15-15-15-15-15-15"}, {7, "13-13-13-13-13-13-12"}};

// ---- harness ---------------------------------------------------------------

int criteria_failed = 0;

void report(int number, const char* name, bool pass, double seconds, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", pass ? "PASS" : "FAIL", number, name, seconds,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++criteria_failed;
}

void run_criterion(int number, const char* name, const std::function<bool(std::string&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(number, name, pass, seconds, detail);
}

// "2x23-2x22" or "22-24-22-22" -> expanded width list, in printed order.
std::vector<int> expand_notation(const std::string& text) {
  std::vector<int> widths;
  for (std::string_view part : split(text, '-')) {
    const std::string p(part);
    const auto x = p.find('x');
    if (x == std::string::npos) {
      widths.push_back(std::stoi(p));
    } else {
      const int reps = std::stoi(p.substr(0, x));
      const int width = std::stoi(p.substr(x + 1));
      for (int i = 0; i < reps; ++i) widths.push_back(width);
    }
  }
  return widths;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string strip_timestamp(std::string text) {
  const auto pos = text.find("\"timestamp_utc\"");
  if (pos == std::string::npos) return text;
  const auto end = text.find('\n', pos);
  text.erase(pos, end - pos + 1);
  return text;
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const char* cli = std::getenv("SCARCENET_CLI");
  CliRun r;
  if (!cli) return r;
  const std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const CellReport* find_cell(const ExperimentReport& r, int group, int depth) {
  for (const auto& c : r.cells) {
    if (c.group == group && c.depth == depth) return &c;
  }
  return nullptr;
}

// ---- criteria --------------------------------------------------------------

bool criterion1_dataset(std::string& detail) {
  std::string expected{kCsvHeader};
  expected += '\n';
  for (const char* row : kExpectedRows) {
    expected += row;
    expected += '\n';
  }
  if (sha1_hex(expected) != kDatasetShaExpected) {
    detail = "reference checksum drifted";
    return false;
  }
  const CliRun shown = run_cli("dataset show");
  if (shown.exit_code != 0) {
    detail = "dataset show exited " + std::to_string(shown.exit_code);
    return false;
  }
  if (shown.out != expected) {
    detail = "CLI output differs from the published rows";
    return false;
  }
  detail = "50 rows bit-exact, sha1 " + std::string(kDatasetShaExpected).substr(0, 12);
  return true;
}

bool criterion2_metrics_oracle(std::string& detail) {
  std::vector<double> targets, predictions;
  for (const auto& row : kPublished44) {
    targets.push_back(row.target);
    predictions.push_back(row.prediction);
    const double row_ea = 100.0 * std::abs(row.target - row.prediction) / row.target;
    if (std::abs(row_ea - row.printed_ea) > 0.01) {
      detail = "per-row error off at target " + format_double(row.target);
      return false;
    }
  }
  const double mean = mape(targets, predictions);
  const double worst = max_ape(targets, predictions);
  detail = "E_a " + format_fixed(mean, 4) + ", E_max " + format_fixed(worst, 4);
  return std::abs(mean - 7.23) <= 0.005 && std::abs(worst - 26.70) <= 0.005 && targets.size() == 44;
}

bool criterion3_architectures(std::string& detail) {
  const auto& table1 = table1_architectures();
  if (table1.size() != 6) {
    detail = "expected 6 deep layouts";
    return false;
  }
  for (const auto& layout : table1) {
    const auto printed = expand_notation(kPrintedTable1.at(static_cast<int>(layout.widths.size())));
    if (std::multiset<int>(printed.begin(), printed.end()) !=
        std::multiset<int>(layout.widths.begin(), layout.widths.end())) {
      detail = "table-1 layout mismatch at depth " + std::to_string(layout.widths.size());
      return false;
    }
    if (layout.total_neurons() != 90) {
      detail = "table-1 budget mismatch";
      return false;
    }
  }
  int cells = 0;
  for (const auto& [budget, printed_rows] : kPrintedGrid) {
    const auto grid = table2_architectures(budget);
    for (const auto& [depth, notation] : printed_rows) {
      const auto printed = expand_notation(notation);
      const auto& got = grid.at(depth).widths;
      if (std::multiset<int>(printed.begin(), printed.end()) !=
          std::multiset<int>(got.begin(), got.end())) {
        detail = "table-2 multiset mismatch at " + std::to_string(budget) + "/" + std::to_string(depth);
        return false;
      }
      int sum = 0;
      for (int w : got) sum += w;
      if (sum != budget) {
        detail = "table-2 budget mismatch at " + std::to_string(budget) + "/" + std::to_string(depth);
        return false;
      }
      ++cells;
    }
  }
  detail = std::to_string(cells) + " grid cells + 6 deep rows verified";
  return cells == 33;
}

bool criterion4_jacobian(std::string& detail) {
  Rng rng(424242);
  const Activation acts[] = {Activation::LogSigmoid, Activation::TanSigmoid, Activation::PositiveLinear};
  double worst = 0.0;
  for (int net_index = 0; net_index < 50; ++net_index) {
    std::vector<int> hidden(1 + rng.below(3));
    for (auto& w : hidden) w = 1 + static_cast<int>(rng.below(10));
    const Mlp net = build_mlp(hidden, acts[net_index % 3], rng.next_u64());
    std::vector<std::array<double, 5>> inputs(5);
    std::vector<double> targets(5);
    for (auto& x : inputs) {
      for (auto& v : x) v = rng.uniform01();
    }
    for (auto& t : targets) t = rng.uniform01();

    const Matrix jac = error_jacobian(net, inputs, targets);
    const std::vector<double> w = flatten(net);
    const double h = 1e-6;
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::vector<double> wp = w, wm = w;
      wp[k] += h;
      wm[k] -= h;
      const Mlp np = unflattened(net, wp);
      const Mlp nm = unflattened(net, wm);
      for (std::size_t s = 0; s < inputs.size(); ++s) {
        const double fd = (forward(nm, inputs[s]) - forward(np, inputs[s])) / (2 * h);
        const double err = std::abs(jac(s, k) - fd) / std::max(1.0, std::abs(fd));
        worst = std::max(worst, err);
      }
    }
  }
  detail = "worst relative error " + format_double(worst) + " over 50 nets";
  return worst <= 1e-6;
}

bool criterion5_trainer_invariants(std::string& detail) {
  const Dataset& ds = embedded_gandhi();
  const SplitPlan plan = experiment2_split(ds);
  std::vector<std::size_t> pool = plan.train;
  pool.insert(pool.end(), plan.validation.begin(), plan.validation.end());
  const Normalizer norm = fit_normalizer(ds, pool);
  TrainingSet data;
  for (std::size_t i : plan.train) {
    data.train_inputs.push_back(norm.transform_input(ds[i]));
    data.train_targets.push_back(norm.transform_target(ds[i].qu));
  }
  for (std::size_t i : plan.validation) {
    data.val_inputs.push_back(norm.transform_input(ds[i]));
    data.val_targets.push_back(norm.transform_target(ds[i].qu));
  }

  const std::vector<int> layout = {24, 24, 24, 24, 24};
  int total_epochs = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Mlp net = build_mlp(layout, Activation::LogSigmoid, derive_seed(20240809, "c5/" + std::to_string(seed)));
    TrainConfig cfg;
    cfg.seed = seed;
    const TrainResult result = train(net, data, cfg);
    const double n_params = static_cast<double>(net.num_params());
    if (result.record.epochs.size() > 100) {
      detail = "run exceeded 100 epochs";
      return false;
    }
    total_epochs += static_cast<int>(result.record.epochs.size());
    switch (result.record.stop_reason) {
      case StopReason::MaxEpochs:
      case StopReason::ValidationStreak:
      case StopReason::MuOverflow:
      case StopReason::GradientVanished:
        break;
    }
    for (const EpochStats& e : result.record.epochs) {
      if (e.step_accepted && !(e.objective < e.objective_before)) {
        detail = "accepted step failed to decrease F at seed " + std::to_string(seed);
        return false;
      }
      if (!(e.alpha >= 0.0) || !(e.beta >= 0.0) || !std::isfinite(e.alpha) || !std::isfinite(e.beta)) {
        detail = "hyperparameters left [0, inf) at seed " + std::to_string(seed);
        return false;
      }
      if (std::isfinite(e.gamma) && (e.gamma < 0.0 || e.gamma > n_params)) {
        detail = "gamma left [0, N_w] at seed " + std::to_string(seed);
        return false;
      }
    }
  }
  detail = "50 runs, " + std::to_string(total_epochs) + " epochs total";
  return true;
}

bool criterion6_depth_trend(std::string& detail) {
  Exp2Config cfg;
  cfg.budgets = {90};
  cfg.depths = {1, 5, 15};
  cfg.replicates = 5;
  cfg.base_seed = 20240809;
  const ExperimentReport report = run_experiment2(cfg);
  const CellReport* d1 = find_cell(report, 90, 1);
  const CellReport* d5 = find_cell(report, 90, 5);
  const CellReport* d15 = find_cell(report, 90, 15);
  if (!d1 || !d5 || !d15 || d1->stats.successes == 0 || d5->stats.successes == 0 ||
      d15->stats.successes == 0) {
    detail = "missing cells";
    return false;
  }
  detail = "median E_a: depth1 " + format_fixed(d1->stats.median_e_a, 2) + ", depth5 " +
           format_fixed(d5->stats.median_e_a, 2) + ", depth15 " + format_fixed(d15->stats.median_e_a, 2);
  return d5->stats.median_e_a < d1->stats.median_e_a && d5->stats.median_e_a < d15->stats.median_e_a;
}

bool criterion7_scarcity_trend(std::string& detail) {
  Exp1Config cfg;
  cfg.sets = {1, 5};
  cfg.depths = {7};
  cfg.dnn_replicates = 5;
  cfg.shallow_count = 0;
  cfg.base_seed = 20240809;
  const ExperimentReport report = run_experiment1(cfg);
  const CellReport* set1 = find_cell(report, 1, 7);
  const CellReport* set5 = find_cell(report, 5, 7);
  if (!set1 || !set5 || set1->stats.successes == 0 || set5->stats.successes == 0) {
    detail = "missing cells";
    return false;
  }
  detail = "best E_a: set1 " + format_fixed(set1->stats.best_e_a, 2) + ", set5 " +
           format_fixed(set5->stats.best_e_a, 2);
  return set5->stats.best_e_a > set1->stats.best_e_a;
}

bool criterion8_absolute_plausibility(std::string& detail) {
  Exp2Config cfg;
  cfg.budgets = {120};
  cfg.depths = {5};
  cfg.replicates = 20;
  cfg.base_seed = 20240809;
  const ExperimentReport report = run_experiment2(cfg);
  const CellReport* cell = find_cell(report, 120, 5);
  if (!cell || cell->stats.successes == 0) {
    detail = "cell missing";
    return false;
  }
  detail = "best E_a " + format_fixed(cell->stats.best_e_a, 2) + " over 20 replicates";
  return cell->stats.best_e_a >= 4.0 && cell->stats.best_e_a <= 15.0;
}

bool criterion9_determinism(std::string& detail) {
  const auto tmp = std::filesystem::temp_directory_path() / "scarcenet_acceptance";
  std::filesystem::remove_all(tmp);
  std::filesystem::create_directories(tmp);
  const std::string base = " --neurons 90,120 --depths 1,5 --replicates 2 --seed 2024 --out ";
  const auto a = tmp / "a";
  const auto b = tmp / "b";
  const auto c = tmp / "c";
  if (run_cli("exp2 --jobs 1" + base + a.string()).exit_code != 0 ||
      run_cli("exp2 --jobs 1" + base + b.string()).exit_code != 0 ||
      run_cli("exp2 --jobs 4" + base + c.string()).exit_code != 0) {
    detail = "CLI run failed";
    return false;
  }
  for (const char* name : {"exp2_table.csv", "best_predictions.csv"}) {
    if (slurp(a / name) != slurp(b / name)) {
      detail = std::string(name) + " differs between identical runs";
      return false;
    }
    if (slurp(a / name) != slurp(c / name)) {
      detail = std::string(name) + " differs between --jobs 1 and --jobs 4";
      return false;
    }
  }
  if (strip_timestamp(slurp(a / "run_meta.json")) != strip_timestamp(slurp(b / "run_meta.json")) ||
      strip_timestamp(slurp(a / "run_meta.json")) != strip_timestamp(slurp(c / "run_meta.json"))) {
    detail = "run_meta.json differs beyond the timestamp";
    return false;
  }

  // The library-level experiment-1 path must be deterministic as well.
  Exp1Config cfg;
  cfg.sets = {5};
  cfg.depths = {1, 7};
  cfg.dnn_replicates = 2;
  cfg.shallow_count = 6;
  cfg.base_seed = 77;
  cfg.jobs = 1;
  const ExperimentReport r1 = run_experiment1(cfg);
  cfg.jobs = 4;
  const ExperimentReport r2 = run_experiment1(cfg);
  const auto d1 = tmp / "exp1a";
  const auto d2 = tmp / "exp1b";
  emit_report(r1, ReportFormat::Csv, d1);
  emit_report(r2, ReportFormat::Csv, d2);
  if (slurp(d1 / "exp1_table.csv") != slurp(d2 / "exp1_table.csv") ||
      slurp(d1 / "figure2_data.csv") != slurp(d2 / "figure2_data.csv")) {
    detail = "experiment-1 outputs differ across job counts";
    return false;
  }
  std::filesystem::remove_all(tmp);
  detail = "reruns and job counts byte-identical";
  return true;
}

}  // namespace

int main() {
  std::printf("scarcenet acceptance suite\n");
  run_criterion(1, "dataset fidelity", criterion1_dataset);
  run_criterion(2, "published-prediction metric oracle", criterion2_metrics_oracle);
  run_criterion(3, "architecture fidelity", criterion3_architectures);
  run_criterion(4, "jacobian vs finite differences", criterion4_jacobian);
  run_criterion(5, "trainer invariants over 50 seeds", criterion5_trainer_invariants);
  run_criterion(6, "depth trend at budget 90", criterion6_depth_trend);
  run_criterion(7, "scarcity trend at depth 7", criterion7_scarcity_trend);
  run_criterion(8, "absolute plausibility of the best cell", criterion8_absolute_plausibility);
  run_criterion(9, "determinism and parallel equivalence", criterion9_determinism);
  if (criteria_failed == 0) {
    std::printf("all 9 criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", criteria_failed);
  return 1;
}
