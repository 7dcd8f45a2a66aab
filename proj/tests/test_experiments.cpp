#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "scarcenet/errors.hpp"
#include "scarcenet/experiments.hpp"
#include "scarcenet/util.hpp"

using namespace scarcenet;

namespace {

std::multiset<int> widths_of(const ArchitectureLayout& layout) {
  return std::multiset<int>(layout.widths.begin(), layout.widths.end());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// run_meta.json without its timestamp line, for byte comparisons.
std::string strip_timestamp(std::string text) {
  const auto pos = text.find("\"timestamp_utc\"");
  if (pos == std::string::npos) return text;
  const auto end = text.find('\n', pos);
  text.erase(pos, end - pos + 1);
  return text;
}

std::filesystem::path fresh_dir(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

const CellReport* find_cell(const ExperimentReport& r, int group, int depth) {
  for (const auto& c : r.cells) {
    if (c.group == group && c.depth == depth) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("first-experiment architectures are the printed six layouts") {
  const auto& layouts = table1_architectures();
  REQUIRE(layouts.size() == 6);
  CHECK(layouts[0].widths == std::vector<int>{45, 45});
  CHECK(layouts[2].widths == std::vector<int>{22, 24, 22, 22});
  CHECK(layouts[5].widths == std::vector<int>{13, 13, 13, 13, 13, 13, 12});
  for (const auto& layout : layouts) {
    CHECK(layout.total_neurons() == 90);
    CHECK(layout.provenance == LayoutProvenance::Table1);
  }
}

TEST_CASE("second-experiment architectures match the printed grid") {
  const auto g90 = table2_architectures(90);
  const auto g120 = table2_architectures(120);
  const auto g150 = table2_architectures(150);
  REQUIRE(g90.size() == 11);
  REQUIRE(g120.size() == 11);
  REQUIRE(g150.size() == 11);

  CHECK(g90.at(4).widths == std::vector<int>{23, 23, 22, 22});
  CHECK(g90.at(8).widths == std::vector<int>{11, 11, 11, 11, 11, 11, 12, 12});
  CHECK(g120.at(7).widths == std::vector<int>{17, 17, 17, 17, 17, 17, 18});
  CHECK(g150.at(7).widths == std::vector<int>{22, 22, 22, 21, 21, 21, 21});
  CHECK(g150.at(15).widths == std::vector<int>(15, 10));

  for (const auto& [budget, grid] : std::map<int, std::map<int, ArchitectureLayout>>{
           {90, g90}, {120, g120}, {150, g150}}) {
    for (const auto& [depth, layout] : grid) {
      CHECK(layout.total_neurons() == budget);
      CHECK(static_cast<int>(layout.widths.size()) == depth);
    }
  }
  CHECK_THROWS_AS(table2_architectures(100), ShapeError);
}

TEST_CASE("distribute_neurons uses floor plus front-loaded remainder") {
  CHECK(distribute_neurons(90, 7).widths == std::vector<int>{13, 13, 13, 13, 13, 13, 12});
  CHECK(distribute_neurons(10, 10).widths == std::vector<int>(10, 1));
  CHECK(distribute_neurons(120, 9).widths == std::vector<int>{14, 14, 14, 13, 13, 13, 13, 13, 13});
  // Same multiset as the printed 120/9 row, different order.
  CHECK(widths_of(distribute_neurons(120, 9)) == widths_of(table2_architectures(120).at(9)));
  CHECK_THROWS_AS(distribute_neurons(5, 6), ShapeError);
  CHECK_THROWS_AS(distribute_neurons(5, 0), ShapeError);
}

TEST_CASE("select_best picks the lowest error with the documented tie rules") {
  EvalResult a;
  a.e_a = 5;
  a.e_max = 13;
  EvalResult b;
  b.e_a = 5;
  b.e_max = 11;
  EvalResult c;
  c.e_a = 7;
  c.e_max = 8;
  CHECK(select_best(std::vector<EvalResult>{a}) == 0);
  CHECK(select_best(std::vector<EvalResult>{a, b, c}) == 1);
  CHECK(select_best(std::vector<EvalResult>{b, a, c}) == 0);
  // Permuting candidates never changes the selected pair.
  std::vector<EvalResult> pool = {c, a, b};
  const auto idx = select_best(pool);
  CHECK(pool[idx].e_a == 5);
  CHECK(pool[idx].e_max == 11);
  CHECK_THROWS_AS(select_best(std::vector<EvalResult>{}), ShapeError);
}

TEST_CASE("shallow roster cycles widths, activations and trainers deterministically") {
  const ShallowSweep sweep;
  const ShallowVariant first = shallow_variant(sweep, 0);
  CHECK(first.width == 90);
  std::set<int> widths;
  std::set<std::string> trainers, activations;
  for (std::size_t i = 0; i < 48; ++i) {
    const ShallowVariant v = shallow_variant(sweep, i);
    widths.insert(v.width);
    trainers.insert(std::string(to_string(v.trainer)));
    activations.insert(std::string(to_string(v.activation)));
    CHECK(v.width >= sweep.min_width);
    CHECK(v.width <= sweep.max_width);
  }
  CHECK(trainers.size() == 4);
  CHECK(activations.size() == 3);
  CHECK(widths.size() == 4);  // 48 = one full trainer x activation cycle per width step
  // The cycle wraps around after the full cartesian product.
  const std::size_t full = 111 * 12;
  CHECK(shallow_variant(sweep, 0).width == shallow_variant(sweep, full).width);
}

TEST_CASE("a degenerate experiment-1 run produces one cell with one logged seed") {
  Exp1Config cfg;
  cfg.sets = {1};
  cfg.depths = {1};
  cfg.shallow_count = 1;
  cfg.dnn_replicates = 1;
  cfg.base_seed = 5;
  cfg.jobs = 1;
  const ExperimentReport report = run_experiment1(cfg);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].group == 1);
  CHECK(report.cells[0].depth == 1);
  REQUIRE(report.cells[0].outcomes.size() == 1);
  CHECK(report.cells[0].outcomes[0].seed == derive_seed(5, "exp1/set1/depth1/rep0"));
  CHECK(report.cells[0].outcomes[0].variant.has_value());
  CHECK(report.experiment == "exp1");
  CHECK(report.dataset_hash.size() == 40);
}

TEST_CASE("experiment-2 reports cover the requested grid and expose predictions") {
  Exp2Config cfg;
  cfg.budgets = {90, 120};
  cfg.depths = {1, 5};
  cfg.replicates = 2;
  cfg.base_seed = 11;
  cfg.jobs = 1;
  const ExperimentReport report = run_experiment2(cfg);
  REQUIRE(report.cells.size() == 4);
  for (const auto& cell : report.cells) {
    CHECK(cell.outcomes.size() == 2);
    CHECK(cell.stats.successes + cell.stats.failures == 2);
    if (cell.stats.successes > 0) CHECK(cell.stats.best_e_a <= cell.stats.mean_e_a + 1e-12);
  }
  REQUIRE(report.best_predictions.size() == 44);
  CHECK_FALSE(report.best_cell.empty());
  // The best cell's stats match the global best prediction error.
  double best_ea = 1e18;
  for (const auto& cell : report.cells) {
    if (cell.stats.successes > 0) best_ea = std::min(best_ea, cell.stats.best_e_a);
  }
  double sum = 0;
  for (const auto& p : report.best_predictions) sum += p.ape;
  CHECK(sum / 44.0 == doctest::Approx(best_ea).epsilon(1e-9));
}

TEST_CASE("replicate seeds are independent of the surrounding grid") {
  Exp2Config small;
  small.budgets = {120};
  small.depths = {5};
  small.replicates = 2;
  small.base_seed = 77;
  small.jobs = 1;
  Exp2Config big = small;
  big.budgets = {90, 120};
  big.depths = {1, 5};
  const ExperimentReport a = run_experiment2(small);
  const ExperimentReport b = run_experiment2(big);
  const CellReport* cell_a = find_cell(a, 120, 5);
  const CellReport* cell_b = find_cell(b, 120, 5);
  REQUIRE(cell_a);
  REQUIRE(cell_b);
  for (int i = 0; i < 2; ++i) {
    CHECK(cell_a->outcomes[i].seed == cell_b->outcomes[i].seed);
    CHECK(cell_a->outcomes[i].e_a == cell_b->outcomes[i].e_a);
  }
}

TEST_CASE("parallel and sequential execution produce identical reports") {
  Exp2Config cfg;
  cfg.budgets = {90};
  cfg.depths = {1, 5};
  cfg.replicates = 3;
  cfg.base_seed = 123;
  cfg.jobs = 1;
  const ExperimentReport seq = run_experiment2(cfg);
  cfg.jobs = 4;
  const ExperimentReport par = run_experiment2(cfg);
  REQUIRE(seq.cells.size() == par.cells.size());
  for (std::size_t c = 0; c < seq.cells.size(); ++c) {
    REQUIRE(seq.cells[c].outcomes.size() == par.cells[c].outcomes.size());
    for (std::size_t i = 0; i < seq.cells[c].outcomes.size(); ++i) {
      CHECK(seq.cells[c].outcomes[i].e_a == par.cells[c].outcomes[i].e_a);
      CHECK(seq.cells[c].outcomes[i].seed == par.cells[c].outcomes[i].seed);
    }
  }
  for (std::size_t i = 0; i < seq.best_predictions.size(); ++i) {
    CHECK(seq.best_predictions[i].prediction == par.best_predictions[i].prediction);
  }
}

TEST_CASE("emitted reports are byte-identical across reruns") {
  Exp2Config cfg;
  cfg.budgets = {120};
  cfg.depths = {5};
  cfg.replicates = 2;
  cfg.base_seed = 9;
  cfg.jobs = 1;
  const auto dir1 = fresh_dir("scarcenet_emit1");
  const auto dir2 = fresh_dir("scarcenet_emit2");
  emit_report(run_experiment2(cfg), ReportFormat::Csv, dir1);
  emit_report(run_experiment2(cfg), ReportFormat::Csv, dir2);
  for (const char* name : {"exp2_table.csv", "best_predictions.csv"}) {
    CHECK(slurp(dir1 / name) == slurp(dir2 / name));
  }
  CHECK(strip_timestamp(slurp(dir1 / "run_meta.json")) == strip_timestamp(slurp(dir2 / "run_meta.json")));
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("experiment-2 table has one row per depth and one column block per budget") {
  Exp2Config cfg;
  cfg.budgets = {90, 120, 150};
  cfg.depths = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15};
  cfg.replicates = 1;
  cfg.base_seed = 3;
  cfg.jobs = 0;  // hardware concurrency
  const auto dir = fresh_dir("scarcenet_fullgrid");
  emit_report(run_experiment2(cfg), ReportFormat::Markdown, dir);
  const std::string table = slurp(dir / "exp2_table.csv");
  std::size_t rows = std::count(table.begin(), table.end(), '\n');
  CHECK(rows == 12);  // header + 11 depths
  const std::string header = table.substr(0, table.find('\n'));
  CHECK(header.find("n90_ea_emax") != std::string::npos);
  CHECK(header.find("n120_ea_emax") != std::string::npos);
  CHECK(header.find("n150_ea_emax") != std::string::npos);
  // formatted cells look like "6.45 (13.78)"
  const std::string second_line = table.substr(table.find('\n') + 1);
  CHECK(second_line.find(" (") != std::string::npos);
  CHECK(slurp(dir / "exp2_table.md").find("| depth |") == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("experiment-1 emission writes the figure data grid") {
  Exp1Config cfg;
  cfg.sets = {4, 5};
  cfg.depths = {2, 7};
  cfg.dnn_replicates = 1;
  cfg.shallow_count = 0;
  cfg.base_seed = 21;
  cfg.jobs = 1;
  const auto dir = fresh_dir("scarcenet_exp1emit");
  const ExperimentReport report = run_experiment1(cfg);
  emit_report(report, ReportFormat::Csv, dir);
  const std::string fig = slurp(dir / "figure2_data.csv");
  CHECK(fig.rfind("set,depth,best_E_a\n", 0) == 0);
  CHECK(std::count(fig.begin(), fig.end(), '\n') == 5);  // header + 4 cells
  const std::string table = slurp(dir / "exp1_table.csv");
  CHECK(table.find("set4_ea_emax") != std::string::npos);
  CHECK(table.find("set5_ea_emax") != std::string::npos);
  const std::string meta = slurp(dir / "run_meta.json");
  CHECK(meta.find("\"experiment\": \"exp1\"") != std::string::npos);
  CHECK(meta.find("\"dataset_sha1\"") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("experiment configs are validated") {
  Exp1Config exp1;
  exp1.sets = {0};
  CHECK_THROWS_AS(run_experiment1(exp1), ShapeError);
  Exp1Config exp1b;
  exp1b.dnn_replicates = 0;
  CHECK_THROWS_AS(run_experiment1(exp1b), ShapeError);
  Exp2Config exp2;
  exp2.budgets = {100};
  CHECK_THROWS_AS(run_experiment2(exp2), ShapeError);
  Exp2Config exp2b;
  exp2b.depths = {11};
  CHECK_THROWS_AS(run_experiment2(exp2b), ShapeError);
}
