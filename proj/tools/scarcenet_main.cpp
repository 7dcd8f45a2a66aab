#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scarcenet/dataset.hpp"
#include "scarcenet/errors.hpp"
#include "scarcenet/experiments.hpp"
#include "scarcenet/metrics.hpp"
#include "scarcenet/network.hpp"
#include "scarcenet/trainers.hpp"
#include "scarcenet/util.hpp"

namespace {

using namespace scarcenet;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SCARCENET_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("SCARCENET_SEED", "must be an unsigned integer");
    }
  }
  return 1;
}

std::vector<int> parse_layout(const std::string& text) {
  std::vector<int> widths;
  for (std::string_view part : split(text, 'x')) {
    int w = 0;
    try {
      w = std::stoi(std::string(part));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--layout", "expected widths like 18x18x18, got '" + text + "'");
    }
    if (w < 1) throw CLI::ValidationError("--layout", "layer widths must be positive");
    widths.push_back(w);
  }
  if (widths.empty() || widths.size() > static_cast<std::size_t>(kMaxHiddenLayers)) {
    throw CLI::ValidationError("--layout", "need 1.." + std::to_string(kMaxHiddenLayers) + " hidden layers");
  }
  return widths;
}

// Accepts "1,3,5", "1-5" and "1..5".
std::set<int> parse_int_set(const std::string& text, const std::string& flag) {
  std::set<int> values;
  for (std::string_view part : split(text, ',')) {
    std::string token(part);
    std::size_t dash = token.find("..");
    std::size_t len = 2;
    if (dash == std::string::npos) {
      dash = token.find('-');
      len = 1;
    }
    try {
      if (dash != std::string::npos && dash > 0) {
        const int lo = std::stoi(token.substr(0, dash));
        const int hi = std::stoi(token.substr(dash + len));
        for (int v = lo; v <= hi; ++v) values.insert(v);
      } else {
        values.insert(std::stoi(token));
      }
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "cannot parse '" + token + "'");
    }
  }
  if (values.empty()) throw CLI::ValidationError(flag, "empty list");
  return values;
}

ReportFormat parse_format(const std::string& text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "markdown" || text == "md") return ReportFormat::Markdown;
  throw CLI::ValidationError("--format", "expected csv or markdown");
}

struct SplitChoice {
  bool exp2 = false;
  int exp1_set = 0;  // 0 = unset
};

SplitChoice parse_split(const std::string& text) {
  SplitChoice choice;
  if (text == "exp2") {
    choice.exp2 = true;
    return choice;
  }
  if (text.rfind("exp1:", 0) == 0) {
    try {
      choice.exp1_set = std::stoi(text.substr(5));
    } catch (const std::exception&) {
      choice.exp1_set = 0;
    }
    if (choice.exp1_set >= 1 && choice.exp1_set <= 5) return choice;
  }
  throw CLI::ValidationError("--split", "expected exp2 or exp1:SET with SET in 1..5");
}

int run_train(const std::string& layout_text, const std::string& trainer_text, std::uint64_t seed,
              const std::optional<std::string>& data_path, const std::optional<std::string>& split_text,
              const std::string& out_path) {
  const std::vector<int> layout = parse_layout(layout_text);
  const TrainerKind trainer = trainer_from_string(trainer_text);

  Dataset ds = data_path ? load_csv(*data_path) : embedded_gandhi();
  SplitPlan plan;
  if (split_text) {
    const SplitChoice choice = parse_split(*split_text);
    plan = choice.exp2 ? experiment2_split(ds)
                       : experiment1_split(ds, choice.exp1_set,
                                           derive_seed(seed, "exp1/split/set" + std::to_string(choice.exp1_set)));
  } else {
    plan.train.resize(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) plan.train[i] = i;
  }

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

  Mlp net = build_mlp(layout, Activation::LogSigmoid, seed);
  TrainConfig cfg;
  cfg.trainer = trainer;
  cfg.seed = seed;
  const TrainResult result = train(net, data, cfg);
  save_model(result.model, norm, out_path);

  std::cout << "trained layout " << layout_text << " with " << to_string(trainer) << ", seed " << seed
            << "\n";
  std::cout << "epochs: " << result.record.epochs.size() << ", stop: " << to_string(result.record.stop_reason)
            << ", model: " << out_path << "\n";

  if (!plan.test.empty()) {
    std::vector<double> targets, predictions;
    for (std::size_t i : plan.test) {
      targets.push_back(ds[i].qu);
      predictions.push_back(norm.inverse_output(forward(result.model, norm.transform_input(ds[i]))));
    }
    const EvalResult eval = evaluate(targets, predictions);
    std::cout << "test E_a: " << format_fixed(eval.e_a, 2) << "%, E_max: " << format_fixed(eval.e_max, 2)
              << "%\n";
    std::cout << "target_kpa,prediction_kpa,ape_percent\n";
    for (const auto& p : eval.per_sample) {
      std::cout << format_double(p.target) << ',' << format_double(p.prediction) << ','
                << format_fixed(p.ape, 2) << "\n";
    }
  }
  return 0;
}

int run_predict(const std::string& model_path, const std::string& input_path, const std::string& out_path) {
  const LoadedModel model = load_model(model_path);
  const Dataset ds = load_csv(input_path);
  std::string out{"target_kpa,prediction_kpa,ape_percent\n"};
  for (const Sample& s : ds.samples) {
    const double prediction = model.normalizer.inverse_output(
        forward(model.mlp, model.normalizer.transform_input(s)));
    const double ape = 100.0 * std::abs(s.qu - prediction) / s.qu;
    out += format_double(s.qu) + "," + format_double(prediction) + "," + format_fixed(ape, 2) + "\n";
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw IoError("cannot write " + out_path);
  file << out;
  if (!file) throw IoError("failed writing " + out_path);
  std::cout << "wrote " << ds.size() << " predictions to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian-regularized MLP training and scarce-data experiments on the embedded "
               "bearing-capacity dataset"};
  app.require_subcommand(1);

  // dataset
  auto* dataset_cmd = app.add_subcommand("dataset", "Show or export the embedded dataset");
  dataset_cmd->require_subcommand(1);
  auto* show_cmd = dataset_cmd->add_subcommand("show", "Print the embedded dataset as CSV");
  std::string export_out;
  auto* export_cmd = dataset_cmd->add_subcommand("export", "Write the embedded dataset to a CSV file");
  export_cmd->add_option("--out", export_out, "output CSV path")->required();

  // train
  std::string layout_text, trainer_text = "br", out_model, split_text_raw, data_path_raw;
  std::uint64_t seed = 0;
  auto* train_cmd = app.add_subcommand("train", "Train one network and save it as JSON");
  train_cmd->add_option("--layout", layout_text, "hidden layer widths, e.g. 18x18x18")->required();
  train_cmd->add_option("--trainer", trainer_text, "br|lm|gd|qn (default br)");
  train_cmd->add_option("--seed", seed, "weight-init seed");
  train_cmd->add_option("--data", data_path_raw, "CSV dataset (default: embedded)");
  train_cmd->add_option("--split", split_text_raw, "exp2 or exp1:SET (default: train on all rows)");
  train_cmd->add_option("--out", out_model, "model output path")->required();

  // predict
  std::string predict_model, predict_input, predict_out;
  auto* predict_cmd = app.add_subcommand("predict", "Run a saved model over a CSV of samples");
  predict_cmd->add_option("--model", predict_model, "model JSON path")->required();
  predict_cmd->add_option("--input", predict_input, "input CSV")->required();
  predict_cmd->add_option("--out", predict_out, "output CSV")->required();

  // exp1
  std::string sets_text = "1,2,3,4,5";
  int dnn_replicates = 20, shallow_count = 2000;
  std::string exp1_out, exp1_format = "csv";
  unsigned jobs = 0;
  bool fast = false;
  std::uint64_t exp_seed = 0;
  auto* exp1_cmd = app.add_subcommand("exp1", "First experiment: shallow vs deep across five splits");
  exp1_cmd->add_option("--sets", sets_text, "training sets, e.g. 1,5 or 1..5 (default all)");
  exp1_cmd->add_option("--dnn-replicates", dnn_replicates, "replicates per deep cell (default 20)");
  exp1_cmd->add_option("--shallow-count", shallow_count, "shallow networks per set (default 2000)");
  exp1_cmd->add_option("--seed", exp_seed, "base seed");
  exp1_cmd->add_option("--out", exp1_out, "output directory")->required();
  exp1_cmd->add_option("--jobs", jobs, "parallel training jobs (default: cores)");
  exp1_cmd->add_flag("--fast", fast, "CI preset: 2 replicates, 40 shallow networks");
  exp1_cmd->add_option("--format", exp1_format, "csv|markdown (default csv)");

  // exp2
  std::string neurons_text = "90,120,150", depths_text = "1,2,3,4,5,6,7,8,9,10,15";
  int replicates = 20;
  std::string exp2_out, exp2_format = "csv";
  auto* exp2_cmd = app.add_subcommand("exp2", "Second experiment: depth/width grid on six samples");
  exp2_cmd->add_option("--neurons", neurons_text, "budgets from {90,120,150} (default all)");
  exp2_cmd->add_option("--depths", depths_text, "depths from {1..10,15} (default all)");
  exp2_cmd->add_option("--replicates", replicates, "replicates per cell (default 20)");
  exp2_cmd->add_option("--seed", exp_seed, "base seed");
  exp2_cmd->add_option("--out", exp2_out, "output directory")->required();
  exp2_cmd->add_option("--jobs", jobs, "parallel training jobs (default: cores)");
  exp2_cmd->add_flag("--fast", fast, "CI preset: 2 replicates per cell");
  exp2_cmd->add_option("--format", exp2_format, "csv|markdown (default csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  }

  try {
    if (*show_cmd) {
      std::cout << to_csv(embedded_gandhi());
      return 0;
    }
    if (*export_cmd) {
      write_csv(embedded_gandhi(), export_out);
      std::cout << "wrote " << export_out << "\n";
      return 0;
    }
    if (*train_cmd) {
      const std::uint64_t s = train_cmd->count("--seed") ? seed : default_seed();
      std::optional<std::string> data =
          data_path_raw.empty() ? std::nullopt : std::optional(data_path_raw);
      std::optional<std::string> split =
          split_text_raw.empty() ? std::nullopt : std::optional(split_text_raw);
      return run_train(layout_text, trainer_text, s, data, split, out_model);
    }
    if (*predict_cmd) {
      return run_predict(predict_model, predict_input, predict_out);
    }
    if (*exp1_cmd) {
      Exp1Config cfg;
      cfg.sets = parse_int_set(sets_text, "--sets");
      for (int s : cfg.sets) {
        if (s < 1 || s > 5) throw CLI::ValidationError("--sets", "sets must be within 1..5");
      }
      cfg.dnn_replicates = fast ? 2 : dnn_replicates;
      cfg.shallow_count = fast ? 40 : shallow_count;
      if (cfg.dnn_replicates < 1 || cfg.shallow_count < 0) {
        throw CLI::ValidationError("--dnn-replicates", "replicate counts must be positive");
      }
      cfg.base_seed = exp1_cmd->count("--seed") ? exp_seed : default_seed();
      cfg.jobs = jobs;
      const ExperimentReport report = run_experiment1(cfg);
      emit_report(report, parse_format(exp1_format), exp1_out);
      std::cout << "experiment 1 written to " << exp1_out << "\n";
      return 0;
    }
    if (*exp2_cmd) {
      Exp2Config cfg;
      cfg.budgets = parse_int_set(neurons_text, "--neurons");
      cfg.depths = parse_int_set(depths_text, "--depths");
      for (int b : cfg.budgets) {
        if (b != 90 && b != 120 && b != 150) {
          throw CLI::ValidationError("--neurons", "budgets must be from {90,120,150}");
        }
      }
      for (int d : cfg.depths) {
        if (d < 1 || (d > 10 && d != 15)) {
          throw CLI::ValidationError("--depths", "depths must be within 1..10 or 15");
        }
      }
      cfg.replicates = fast ? 2 : replicates;
      if (cfg.replicates < 1) throw CLI::ValidationError("--replicates", "must be positive");
      cfg.base_seed = exp2_cmd->count("--seed") ? exp_seed : default_seed();
      cfg.jobs = jobs;
      const ExperimentReport report = run_experiment2(cfg);
      emit_report(report, parse_format(exp2_format), exp2_out);
      std::cout << "experiment 2 written to " << exp2_out << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 1;
}
