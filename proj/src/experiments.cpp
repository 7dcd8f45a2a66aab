#include "scarcenet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "scarcenet/errors.hpp"
#include "scarcenet/util.hpp"

namespace scarcenet {

int ArchitectureLayout::total_neurons() const {
  return std::accumulate(widths.begin(), widths.end(), 0);
}

const std::vector<ArchitectureLayout>& table1_architectures() {
  static const std::vector<ArchitectureLayout> kLayouts = {
      {{45, 45}, LayoutProvenance::Table1, "45-45"},
      {{30, 30, 30}, LayoutProvenance::Table1, "30-30-30"},
      {{22, 24, 22, 22}, LayoutProvenance::Table1, "22-24-22-22"},
      {{18, 18, 18, 18, 18}, LayoutProvenance::Table1, "18-18-18-18-18"},
      {{15, 15, 15, 15, 15, 15}, LayoutProvenance::Table1, "15-15-15-15-15-15"},
      {{13, 13, 13, 13, 13, 13, 12}, LayoutProvenance::Table1, "13-13-13-13-13-13-12"},
  };
  return kLayouts;
}

ShallowVariant shallow_variant(const ShallowSweep& sweep, std::size_t index) {
  const std::size_t widths = static_cast<std::size_t>(sweep.max_width - sweep.min_width + 1);
  const std::size_t trainers = kShallowTrainers.size();
  const std::size_t activations = kShallowActivations.size();
  const std::size_t j = index % (widths * trainers * activations);
  ShallowVariant v;
  v.trainer = kShallowTrainers[j % trainers];
  v.activation = kShallowActivations[(j / trainers) % activations];
  v.width = sweep.min_width + static_cast<int>(j / (trainers * activations));
  return v;
}

namespace {

ArchitectureLayout table2_layout(std::initializer_list<int> widths, const char* label) {
  return {std::vector<int>(widths), LayoutProvenance::Table2, label};
}

}  // namespace

std::map<int, ArchitectureLayout> table2_architectures(int neurons) {
  switch (neurons) {
    case 90:
      return {
          {1, table2_layout({90}, "90")},
          {2, table2_layout({45, 45}, "2x45")},
          {3, table2_layout({30, 30, 30}, "3x30")},
          {4, table2_layout({23, 23, 22, 22}, "2x23-2x22")},
          {5, table2_layout({18, 18, 18, 18, 18}, "5x18")},
          {6, table2_layout({15, 15, 15, 15, 15, 15}, "6x15")},
          {7, table2_layout({13, 13, 13, 13, 13, 13, 12}, "6x13-12")},
          {8, table2_layout({11, 11, 11, 11, 11, 11, 12, 12}, "6x11-2x12")},
          {9, table2_layout({10, 10, 10, 10, 10, 10, 10, 10, 10}, "9x10")},
          {10, table2_layout({9, 9, 9, 9, 9, 9, 9, 9, 9, 9}, "10x9")},
          {15, table2_layout({6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6}, "15x6")},
      };
    case 120:
      return {
          {1, table2_layout({120}, "120")},
          {2, table2_layout({60, 60}, "2x60")},
          {3, table2_layout({40, 40, 40}, "3x40")},
          {4, table2_layout({30, 30, 30, 30}, "4x30")},
          {5, table2_layout({24, 24, 24, 24, 24}, "5x24")},
          {6, table2_layout({20, 20, 20, 20, 20, 20}, "6x20")},
          {7, table2_layout({17, 17, 17, 17, 17, 17, 18}, "6x17-18")},
          {8, table2_layout({15, 15, 15, 15, 15, 15, 15, 15}, "8x15")},
          {9, table2_layout({13, 13, 13, 13, 13, 13, 14, 14, 14}, "6x13-3x14")},
          {10, table2_layout({12, 12, 12, 12, 12, 12, 12, 12, 12, 12}, "10x12")},
          {15, table2_layout({8, 8, 8, 8, 8, 8, 8, 8, 8, 8, 8, 8, 8, 8, 8}, "15x8")},
      };
    case 150:
      return {
          {1, table2_layout({150}, "150")},
          {2, table2_layout({75, 75}, "2x75")},
          {3, table2_layout({50, 50, 50}, "3x50")},
          {4, table2_layout({38, 38, 37, 37}, "2x38-2x37")},
          {5, table2_layout({30, 30, 30, 30, 30}, "5x30")},
          {6, table2_layout({25, 25, 25, 25, 25, 25}, "6x25")},
          {7, table2_layout({22, 22, 22, 21, 21, 21, 21}, "3x22-4x21")},
          {8, table2_layout({19, 19, 19, 19, 19, 19, 18, 18}, "6x19-2x18")},
          {9, table2_layout({17, 17, 17, 17, 17, 17, 16, 16, 16}, "6x17-3x16")},
          {10, table2_layout({15, 15, 15, 15, 15, 15, 15, 15, 15, 15}, "10x15")},
          {15, table2_layout({10, 10, 10, 10, 10, 10, 10, 10, 10, 10, 10, 10, 10, 10, 10}, "15x10")},
      };
    default:
      throw ShapeError("unsupported neuron budget " + std::to_string(neurons) + " (use 90, 120 or 150)");
  }
}

ArchitectureLayout distribute_neurons(int total, int depth) {
  if (depth < 1 || total < depth) {
    throw ShapeError("cannot distribute " + std::to_string(total) + " neurons over " +
                     std::to_string(depth) + " layers");
  }
  const int base = total / depth;
  const int remainder = total % depth;
  ArchitectureLayout layout;
  layout.provenance = LayoutProvenance::Generated;
  layout.widths.assign(static_cast<std::size_t>(depth), base);
  for (int i = 0; i < remainder; ++i) layout.widths[static_cast<std::size_t>(i)] += 1;
  std::ostringstream label;
  for (std::size_t i = 0; i < layout.widths.size(); ++i) {
    if (i) label << '-';
    label << layout.widths[i];
  }
  layout.label = label.str();
  return layout;
}

std::size_t select_best(std::span<const EvalResult> evaluations) {
  if (evaluations.empty()) throw ShapeError("select_best: no evaluations");
  std::size_t best = 0;
  for (std::size_t i = 1; i < evaluations.size(); ++i) {
    const auto& cur = evaluations[i];
    const auto& win = evaluations[best];
    if (cur.e_a < win.e_a || (cur.e_a == win.e_a && cur.e_max < win.e_max)) best = i;
  }
  return best;
}

namespace {

struct ScaledSplit {
  TrainingSet data;
  std::vector<std::array<double, 5>> test_inputs;  // scaled
  std::vector<double> test_targets;                // kPa
  Normalizer normalizer{{0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1}};
};

ScaledSplit prepare_split(const Dataset& ds, const SplitPlan& plan) {
  std::vector<std::size_t> pool = plan.train;
  pool.insert(pool.end(), plan.validation.begin(), plan.validation.end());
  ScaledSplit s;
  s.normalizer = fit_normalizer(ds, pool);
  for (std::size_t i : plan.train) {
    s.data.train_inputs.push_back(s.normalizer.transform_input(ds[i]));
    s.data.train_targets.push_back(s.normalizer.transform_target(ds[i].qu));
  }
  for (std::size_t i : plan.validation) {
    s.data.val_inputs.push_back(s.normalizer.transform_input(ds[i]));
    s.data.val_targets.push_back(s.normalizer.transform_target(ds[i].qu));
  }
  for (std::size_t i : plan.test) {
    s.test_inputs.push_back(s.normalizer.transform_input(ds[i]));
    s.test_targets.push_back(ds[i].qu);
  }
  return s;
}

struct ReplicateTask {
  std::size_t cell = 0;
  int replicate = 0;
  std::uint64_t seed = 0;
  const ArchitectureLayout* layout = nullptr;  // null for shallow sweep entries
  std::optional<ShallowVariant> variant;
  const ScaledSplit* split = nullptr;
};

struct ReplicateResult {
  ReplicateOutcome outcome;
  std::vector<PerSampleError> predictions;
};

ReplicateResult run_replicate(const ReplicateTask& task) {
  ReplicateResult result;
  result.outcome.replicate = task.replicate;
  result.outcome.seed = task.seed;
  result.outcome.variant = task.variant;
  try {
    std::vector<int> widths;
    Activation activation = Activation::LogSigmoid;
    TrainerKind trainer = TrainerKind::BayesianRegularization;
    if (task.variant) {
      widths = {task.variant->width};
      activation = task.variant->activation;
      trainer = task.variant->trainer;
    } else {
      widths = task.layout->widths;
    }
    Mlp net = build_mlp(widths, activation, task.seed);
    TrainConfig cfg;
    cfg.trainer = trainer;
    cfg.seed = task.seed;
    TrainResult trained = train(net, task.split->data, cfg);

    std::vector<double> predictions;
    predictions.reserve(task.split->test_inputs.size());
    for (const auto& x : task.split->test_inputs) {
      predictions.push_back(task.split->normalizer.inverse_output(forward(trained.model, x)));
    }
    EvalResult eval = evaluate(task.split->test_targets, predictions);
    result.outcome.ok = true;
    result.outcome.e_a = eval.e_a;
    result.outcome.e_max = eval.e_max;
    result.outcome.stop_reason = trained.record.stop_reason;
    result.outcome.epochs = static_cast<int>(trained.record.epochs.size());
    result.predictions = std::move(eval.per_sample);
  } catch (const Error& e) {
    result.outcome.ok = false;
    result.outcome.error = e.what();
  }
  return result;
}

CellStats compute_stats(const std::vector<ReplicateOutcome>& outcomes) {
  CellStats stats;
  std::vector<double> eas;
  for (const auto& o : outcomes) {
    if (!o.ok) {
      ++stats.failures;
      continue;
    }
    ++stats.successes;
    eas.push_back(o.e_a);
    const bool better = stats.best_replicate < 0 || o.e_a < stats.best_e_a ||
                        (o.e_a == stats.best_e_a && o.e_max < stats.best_e_max);
    if (better) {
      stats.best_replicate = o.replicate;
      stats.best_e_a = o.e_a;
      stats.best_e_max = o.e_max;
    }
  }
  if (eas.empty()) return stats;
  stats.mean_e_a = std::accumulate(eas.begin(), eas.end(), 0.0) / static_cast<double>(eas.size());
  std::vector<double> sorted = eas;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  stats.median_e_a = (sorted.size() % 2 == 1) ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  if (eas.size() > 1) {
    double ss = 0.0;
    for (double v : eas) ss += (v - stats.mean_e_a) * (v - stats.mean_e_a);
    stats.std_e_a = std::sqrt(ss / static_cast<double>(eas.size() - 1));
  }
  return stats;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ExperimentPlan {
  std::vector<CellReport> cells;
  std::vector<ReplicateTask> tasks;
};

ExperimentReport execute(ExperimentPlan& plan, unsigned jobs, bool want_predictions) {
  std::vector<ReplicateResult> results(plan.tasks.size());
  parallel_for(plan.tasks.size(), jobs, [&](std::size_t i) { results[i] = run_replicate(plan.tasks[i]); });

  ExperimentReport report;
  for (std::size_t i = 0; i < plan.tasks.size(); ++i) {
    plan.cells[plan.tasks[i].cell].outcomes.push_back(results[i].outcome);
  }
  for (auto& cell : plan.cells) {
    std::sort(cell.outcomes.begin(), cell.outcomes.end(),
              [](const ReplicateOutcome& a, const ReplicateOutcome& b) { return a.replicate < b.replicate; });
    cell.stats = compute_stats(cell.outcomes);
  }

  if (want_predictions) {
    // Overall best network across every cell, same tie rules as select_best.
    const ReplicateResult* best = nullptr;
    std::size_t best_cell = 0;
    for (std::size_t i = 0; i < plan.tasks.size(); ++i) {
      const auto& r = results[i];
      if (!r.outcome.ok) continue;
      const bool better =
          best == nullptr || r.outcome.e_a < best->outcome.e_a ||
          (r.outcome.e_a == best->outcome.e_a && r.outcome.e_max < best->outcome.e_max);
      if (better) {
        best = &r;
        best_cell = plan.tasks[i].cell;
      }
    }
    if (best != nullptr) {
      report.best_predictions = best->predictions;
      const CellReport& cell = plan.cells[best_cell];
      report.best_cell = "n" + std::to_string(cell.group) + "/d" + std::to_string(cell.depth) + "/rep" +
                         std::to_string(best->outcome.replicate);
    }
  }

  report.cells = std::move(plan.cells);
  return report;
}

}  // namespace

ExperimentReport run_experiment1(const Exp1Config& cfg) {
  if (cfg.dnn_replicates < 1) throw ShapeError("dnn_replicates must be >= 1");
  if (cfg.shallow_count < 0) throw ShapeError("shallow_count must be >= 0");
  for (int s : cfg.sets) {
    if (s < 1 || s > 5) throw ShapeError("experiment 1 sets must be within 1..5");
  }
  for (int d : cfg.depths) {
    if (d < 1 || d > 7) throw ShapeError("experiment 1 depths must be within 1..7");
  }

  const Dataset& ds = embedded_gandhi();
  const ShallowSweep sweep;
  const auto& dnn_layouts = table1_architectures();

  // One split (and normalizer) per set, shared by every cell of that set.
  std::map<int, ScaledSplit> splits;
  for (int set : cfg.sets) {
    const auto seed = derive_seed(cfg.base_seed, "exp1/split/set" + std::to_string(set));
    splits.emplace(set, prepare_split(ds, experiment1_split(ds, set, seed)));
  }

  ExperimentPlan plan;
  for (int set : cfg.sets) {
    for (int depth : cfg.depths) {
      const bool shallow = depth == 1;
      const int replicates = shallow ? cfg.shallow_count : cfg.dnn_replicates;
      if (replicates == 0) continue;
      CellReport cell;
      cell.group = set;
      cell.depth = depth;
      cell.architecture =
          shallow ? ("sweep " + std::to_string(sweep.min_width) + ".." + std::to_string(sweep.max_width))
                  : dnn_layouts[static_cast<std::size_t>(depth - 2)].label;
      const std::size_t cell_index = plan.cells.size();
      for (int rep = 0; rep < replicates; ++rep) {
        ReplicateTask task;
        task.cell = cell_index;
        task.replicate = rep;
        task.seed = derive_seed(cfg.base_seed, "exp1/set" + std::to_string(set) + "/depth" +
                                                   std::to_string(depth) + "/rep" + std::to_string(rep));
        if (shallow) {
          task.variant = shallow_variant(sweep, static_cast<std::size_t>(rep));
        } else {
          task.layout = &dnn_layouts[static_cast<std::size_t>(depth - 2)];
        }
        task.split = &splits.at(set);
        plan.tasks.push_back(std::move(task));
      }
      plan.cells.push_back(std::move(cell));
    }
  }

  ExperimentReport report = execute(plan, cfg.jobs, /*want_predictions=*/false);
  report.experiment = "exp1";
  report.base_seed = cfg.base_seed;
  nlohmann::json config{{"sets", cfg.sets},
                        {"depths", cfg.depths},
                        {"dnn_replicates", cfg.dnn_replicates},
                        {"shallow_count", cfg.shallow_count},
                        {"base_seed", cfg.base_seed}};
  report.config_json = config.dump();
  report.dataset_hash = dataset_git_hash(ds);
  report.timestamp_utc = utc_timestamp();
  return report;
}

ExperimentReport run_experiment2(const Exp2Config& cfg) {
  if (cfg.replicates < 1) throw ShapeError("replicates must be >= 1");
  const Dataset& ds = embedded_gandhi();
  for (int d : cfg.depths) {
    if (d < 1 || (d > 10 && d != 15)) {
      throw ShapeError("experiment 2 depths must be within 1..10 or 15");
    }
  }

  // Budgets are validated (and layouts resolved) up front.
  std::map<int, std::map<int, ArchitectureLayout>> layouts;
  for (int budget : cfg.budgets) layouts.emplace(budget, table2_architectures(budget));

  ScaledSplit split = prepare_split(ds, experiment2_split(ds));

  ExperimentPlan plan;
  for (int budget : cfg.budgets) {
    for (int depth : cfg.depths) {
      CellReport cell;
      cell.group = budget;
      cell.depth = depth;
      const ArchitectureLayout& layout = layouts.at(budget).at(depth);
      cell.architecture = layout.label;
      const std::size_t cell_index = plan.cells.size();
      for (int rep = 0; rep < cfg.replicates; ++rep) {
        ReplicateTask task;
        task.cell = cell_index;
        task.replicate = rep;
        task.seed = derive_seed(cfg.base_seed, "exp2/n" + std::to_string(budget) + "/d" +
                                                   std::to_string(depth) + "/rep" + std::to_string(rep));
        task.layout = &layout;
        task.split = &split;
        plan.tasks.push_back(std::move(task));
      }
      plan.cells.push_back(std::move(cell));
    }
  }

  ExperimentReport report = execute(plan, cfg.jobs, /*want_predictions=*/true);
  report.experiment = "exp2";
  report.base_seed = cfg.base_seed;
  nlohmann::json config{{"budgets", cfg.budgets},
                        {"depths", cfg.depths},
                        {"replicates", cfg.replicates},
                        {"base_seed", cfg.base_seed}};
  report.config_json = config.dump();
  report.dataset_hash = dataset_git_hash(ds);
  report.timestamp_utc = utc_timestamp();
  return report;
}

namespace {

std::string formatted_cell(const CellStats& stats) {
  if (stats.successes == 0) return "";
  return format_fixed(stats.best_e_a, 2) + " (" + format_fixed(stats.best_e_max, 2) + ")";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

const CellReport* find_cell(const ExperimentReport& report, int group, int depth) {
  for (const auto& cell : report.cells) {
    if (cell.group == group && cell.depth == depth) return &cell;
  }
  return nullptr;
}

std::string experiment_table(const ExperimentReport& report, ReportFormat format) {
  std::vector<int> groups, depths;
  for (const auto& cell : report.cells) {
    groups.push_back(cell.group);
    depths.push_back(cell.depth);
  }
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());

  const bool exp1 = report.experiment == "exp1";
  const std::string group_prefix = exp1 ? "set" : "n";

  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "depth";
    for (int g : groups) out << ',' << group_prefix << g << "_ea_emax";
    for (int g : groups) {
      out << ',' << group_prefix << g << "_best_ea" << ',' << group_prefix << g << "_best_emax" << ','
          << group_prefix << g << "_mean_ea" << ',' << group_prefix << g << "_median_ea" << ','
          << group_prefix << g << "_std_ea" << ',' << group_prefix << g << "_failures";
    }
    out << '\n';
    for (int d : depths) {
      out << d;
      for (int g : groups) {
        const CellReport* cell = find_cell(report, g, d);
        out << ',' << (cell ? formatted_cell(cell->stats) : "");
      }
      for (int g : groups) {
        const CellReport* cell = find_cell(report, g, d);
        if (cell && cell->stats.successes > 0) {
          const CellStats& s = cell->stats;
          out << ',' << format_double(s.best_e_a) << ',' << format_double(s.best_e_max) << ','
              << format_double(s.mean_e_a) << ',' << format_double(s.median_e_a) << ','
              << format_double(s.std_e_a) << ',' << s.failures;
        } else {
          out << ",,,,,," << (cell ? cell->stats.failures : 0);
        }
      }
      out << '\n';
    }
  } else {
    out << "| depth |";
    for (int g : groups) out << ' ' << group_prefix << g << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < groups.size(); ++i) out << "---|";
    out << '\n';
    for (int d : depths) {
      out << "| " << d << " |";
      for (int g : groups) {
        const CellReport* cell = find_cell(report, g, d);
        out << ' ' << (cell ? formatted_cell(cell->stats) : "") << " |";
      }
      out << '\n';
    }
  }
  return out.str();
}

nlohmann::json outcome_json(const ReplicateOutcome& o) {
  nlohmann::json j{{"replicate", o.replicate}, {"seed", o.seed}, {"ok", o.ok}};
  if (o.ok) {
    j["e_a"] = o.e_a;
    j["e_max"] = o.e_max;
    j["stop_reason"] = to_string(o.stop_reason);
    j["epochs"] = o.epochs;
  } else {
    j["error"] = o.error;
  }
  if (o.variant) {
    j["width"] = o.variant->width;
    j["activation"] = to_string(o.variant->activation);
    j["trainer"] = to_string(o.variant->trainer);
  }
  return j;
}

}  // namespace

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  const bool exp1 = report.experiment == "exp1";
  const std::string table_name = exp1 ? "exp1_table" : "exp2_table";
  write_text_file(out_dir / (table_name + ".csv"), experiment_table(report, ReportFormat::Csv));
  if (format == ReportFormat::Markdown) {
    write_text_file(out_dir / (table_name + ".md"), experiment_table(report, ReportFormat::Markdown));
  }

  if (exp1) {
    std::ostringstream fig;
    fig << "set,depth,best_E_a\n";
    std::vector<const CellReport*> cells;
    for (const auto& cell : report.cells) cells.push_back(&cell);
    std::sort(cells.begin(), cells.end(), [](const CellReport* a, const CellReport* b) {
      return std::pair(a->group, a->depth) < std::pair(b->group, b->depth);
    });
    for (const CellReport* cell : cells) {
      fig << cell->group << ',' << cell->depth << ','
          << (cell->stats.successes > 0 ? format_double(cell->stats.best_e_a) : "") << '\n';
    }
    write_text_file(out_dir / "figure2_data.csv", fig.str());
  } else {
    std::ostringstream pred;
    pred << "target_kpa,prediction_kpa,ape_percent\n";
    for (const auto& p : report.best_predictions) {
      pred << format_double(p.target) << ',' << format_double(p.prediction) << ','
           << format_fixed(p.ape, 2) << '\n';
    }
    write_text_file(out_dir / "best_predictions.csv", pred.str());
  }

  nlohmann::json meta;
  meta["schema_version"] = 1;
  meta["experiment"] = report.experiment;
  meta["config"] = nlohmann::json::parse(report.config_json);
  meta["base_seed"] = report.base_seed;
  meta["dataset_sha1"] = report.dataset_hash;
  meta["timestamp_utc"] = report.timestamp_utc;
  if (!report.best_cell.empty()) meta["best_network"] = report.best_cell;
  int failed = 0;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : report.cells) {
    nlohmann::json jc{{"group", cell.group},
                      {"depth", cell.depth},
                      {"architecture", cell.architecture},
                      {"successes", cell.stats.successes},
                      {"failures", cell.stats.failures}};
    if (cell.stats.successes > 0) {
      jc["best_e_a"] = cell.stats.best_e_a;
      jc["best_e_max"] = cell.stats.best_e_max;
      jc["best_replicate"] = cell.stats.best_replicate;
      jc["mean_e_a"] = cell.stats.mean_e_a;
      jc["median_e_a"] = cell.stats.median_e_a;
      jc["std_e_a"] = cell.stats.std_e_a;
    }
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& o : cell.outcomes) {
      reps.push_back(outcome_json(o));
      if (!o.ok) ++failed;
    }
    jc["replicates"] = std::move(reps);
    cells.push_back(std::move(jc));
  }
  meta["cells"] = std::move(cells);
  meta["failed_replicates"] = failed;
  write_text_file(out_dir / "run_meta.json", meta.dump(2) + "\n");
}

}  // namespace scarcenet
