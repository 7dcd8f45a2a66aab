#include "scarcenet/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "scarcenet/errors.hpp"
#include "scarcenet/util.hpp"

namespace scarcenet {

const char* embedded_gandhi_csv();

namespace {

constexpr std::array<std::string_view, 6> kColumnNames = {"B_m",          "D_m",     "L_over_B",
                                                          "gamma_kN_m3",  "phi_deg", "qu_kPa"};

double parse_positive(std::string_view field, std::size_t row, std::size_t col, std::string_view origin) {
  auto fail = [&](const char* why) -> ParseError {
    std::ostringstream msg;
    msg << origin << ": row " << row << ", column " << kColumnNames[col] << ": " << why << " ('" << field << "')";
    return ParseError(msg.str());
  };
  double value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw fail("not a number");
  if (!std::isfinite(value)) throw fail("not finite");
  if (value <= 0) throw fail("must be strictly positive");
  return value;
}

}  // namespace

Dataset parse_csv(std::string_view text, std::string_view origin) {
  Dataset ds;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool saw_header = false;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!saw_header) {
      if (line != kCsvHeader) {
        throw ParseError(std::string(origin) + ": header must be '" + std::string(kCsvHeader) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;  // ignore blank trailing lines
    auto fields = split(line, ',');
    if (fields.size() != 6) {
      throw ParseError(std::string(origin) + ": row " + std::to_string(line_no - 1) + ": expected 6 fields, got " +
                       std::to_string(fields.size()));
    }
    const std::size_t row = line_no - 1;  // 1-based data row
    Sample s;
    s.b = parse_positive(fields[0], row, 0, origin);
    s.d = parse_positive(fields[1], row, 1, origin);
    s.l_over_b = parse_positive(fields[2], row, 2, origin);
    s.unit_weight = parse_positive(fields[3], row, 3, origin);
    s.friction_angle = parse_positive(fields[4], row, 4, origin);
    s.qu = parse_positive(fields[5], row, 5, origin);
    ds.samples.push_back(s);
  }
  return ds;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string());
}

std::string to_csv(const Dataset& ds) {
  std::string out{kCsvHeader};
  out += '\n';
  for (const Sample& s : ds.samples) {
    out += format_double(s.b);
    out += ',';
    out += format_double(s.d);
    out += ',';
    out += format_double(s.l_over_b);
    out += ',';
    out += format_double(s.unit_weight);
    out += ',';
    out += format_double(s.friction_angle);
    out += ',';
    out += format_double(s.qu);
    out += '\n';
  }
  return out;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_csv(ds);
  if (!out) throw IoError("failed writing " + path.string());
}

const Dataset& embedded_gandhi() {
  static const Dataset ds = parse_csv(embedded_gandhi_csv(), "<embedded>");
  return ds;
}

std::string dataset_git_hash(const Dataset& ds) { return git_blob_sha1(to_csv(ds)); }

std::array<std::vector<std::size_t>, 6> partition_blocks(const Dataset& ds) {
  if (ds.size() != 50) {
    throw ShapeError("partition_blocks expects the 50-sample dataset, got " + std::to_string(ds.size()));
  }
  constexpr std::array<std::size_t, 6> kBlockSizes = {9, 9, 8, 8, 8, 8};
  std::array<std::vector<std::size_t>, 6> blocks;
  std::size_t next = 0;
  for (std::size_t b = 0; b < 6; ++b) {
    blocks[b].resize(kBlockSizes[b]);
    std::iota(blocks[b].begin(), blocks[b].end(), next);
    next += kBlockSizes[b];
  }
  return blocks;
}

SplitPlan experiment1_split(const Dataset& ds, int set_number, std::uint64_t seed) {
  if (set_number < 1 || set_number > 5) {
    throw ShapeError("experiment 1 set number must be in 1..5, got " + std::to_string(set_number));
  }
  const auto blocks = partition_blocks(ds);
  const std::size_t train_blocks = 6 - static_cast<std::size_t>(set_number);

  std::vector<std::size_t> pool;
  SplitPlan plan;
  for (std::size_t b = 0; b < 6; ++b) {
    auto& target = (b < train_blocks) ? pool : plan.test;
    target.insert(target.end(), blocks[b].begin(), blocks[b].end());
  }

  // 80/20 split of the pool; validation size rounds half away from zero and
  // is never empty.
  const auto val_count = static_cast<std::size_t>(
      std::max<long>(1, std::lround(0.2 * static_cast<double>(pool.size()))));
  Rng rng(seed);
  rng.shuffle(pool);
  plan.validation.assign(pool.end() - static_cast<std::ptrdiff_t>(val_count), pool.end());
  plan.train.assign(pool.begin(), pool.end() - static_cast<std::ptrdiff_t>(val_count));
  std::sort(plan.train.begin(), plan.train.end());
  std::sort(plan.validation.begin(), plan.validation.end());
  return plan;
}

SplitPlan experiment2_split(const Dataset& ds) {
  if (ds.size() != 50) {
    throw ShapeError("experiment 2 runs on the 50-sample dataset, got " + std::to_string(ds.size()));
  }
  // Positions of the six-sample training table within the dataset; the last
  // one is the validation sample.
  SplitPlan plan;
  plan.train = {0, 1, 3, 4, 8};
  plan.validation = {9};
  std::vector<bool> held(ds.size(), false);
  for (std::size_t i : plan.train) held[i] = true;
  held[plan.validation.front()] = true;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!held[i]) plan.test.push_back(i);
  }
  return plan;
}

Normalizer::Normalizer(const std::array<double, 6>& mins, const std::array<double, 6>& maxs)
    : min_(mins), max_(maxs) {
  for (std::size_t f = 0; f < 6; ++f) {
    if (!std::isfinite(min_[f]) || !std::isfinite(max_[f])) {
      throw NumericError("normalizer bounds must be finite");
    }
    if (!(max_[f] > min_[f])) {
      throw NumericError("degenerate feature " + std::to_string(f) + ": max must exceed min");
    }
  }
}

std::array<double, 5> Normalizer::transform_input(const Sample& s) const {
  const auto x = s.inputs();
  std::array<double, 5> scaled{};
  for (std::size_t f = 0; f < 5; ++f) scaled[f] = (x[f] - min_[f]) / (max_[f] - min_[f]);
  return scaled;
}

double Normalizer::transform_target(double qu) const { return (qu - min_[5]) / (max_[5] - min_[5]); }

double Normalizer::inverse_output(double y_scaled) const { return min_[5] + y_scaled * (max_[5] - min_[5]); }

Normalizer fit_normalizer(const Dataset& ds, std::span<const std::size_t> indices) {
  if (indices.empty()) throw ShapeError("cannot fit a normalizer on an empty set");
  std::array<double, 6> mins, maxs;
  mins.fill(std::numeric_limits<double>::infinity());
  maxs.fill(-std::numeric_limits<double>::infinity());
  for (std::size_t i : indices) {
    const Sample& s = ds[i];
    const std::array<double, 6> row = {s.b, s.d, s.l_over_b, s.unit_weight, s.friction_angle, s.qu};
    for (std::size_t f = 0; f < 6; ++f) {
      mins[f] = std::min(mins[f], row[f]);
      maxs[f] = std::max(maxs[f], row[f]);
    }
  }
  return Normalizer(mins, maxs);
}

Normalizer fit_normalizer(const Dataset& ds) {
  std::vector<std::size_t> all(ds.size());
  std::iota(all.begin(), all.end(), 0);
  return fit_normalizer(ds, all);
}

}  // namespace scarcenet
