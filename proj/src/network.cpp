#include "scarcenet/network.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "scarcenet/errors.hpp"
#include "scarcenet/util.hpp"

namespace scarcenet {

double activate(Activation a, double z) {
  switch (a) {
    case Activation::LogSigmoid:
      return 1.0 / (1.0 + std::exp(-z));
    case Activation::TanSigmoid:
      return std::tanh(z);
    case Activation::PositiveLinear:
      return z > 0.0 ? z : 0.0;
    case Activation::Identity:
      return z;
  }
  throw NumericError("unknown activation");
}

double activate_derivative(Activation a, double z) {
  switch (a) {
    case Activation::LogSigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return s * (1.0 - s);
    }
    case Activation::TanSigmoid: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Activation::PositiveLinear:
      return z > 0.0 ? 1.0 : 0.0;
    case Activation::Identity:
      return 1.0;
  }
  throw NumericError("unknown activation");
}

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::LogSigmoid:
      return "logsig";
    case Activation::TanSigmoid:
      return "tansig";
    case Activation::PositiveLinear:
      return "poslin";
    case Activation::Identity:
      return "identity";
  }
  return "?";
}

Activation activation_from_string(std::string_view name) {
  if (name == "logsig") return Activation::LogSigmoid;
  if (name == "tansig") return Activation::TanSigmoid;
  if (name == "poslin") return Activation::PositiveLinear;
  if (name == "identity") return Activation::Identity;
  throw ParseError("unknown activation '" + std::string(name) + "'");
}

std::size_t Mlp::num_params() const {
  std::size_t count = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    count += weights[l].rows() * weights[l].cols() + biases[l].size();
  }
  return count;
}

Mlp build_mlp(std::span<const int> hidden_widths, Activation hidden_activation, std::uint64_t seed) {
  if (hidden_widths.empty()) throw ShapeError("network needs at least one hidden layer");
  if (hidden_widths.size() > static_cast<std::size_t>(kMaxHiddenLayers)) {
    throw ShapeError("at most " + std::to_string(kMaxHiddenLayers) + " hidden layers supported");
  }
  for (int w : hidden_widths) {
    if (w < 1) throw ShapeError("hidden layer widths must be positive");
  }

  Mlp mlp;
  mlp.hidden_activation = hidden_activation;
  mlp.layer_widths.push_back(kInputWidth);
  mlp.layer_widths.insert(mlp.layer_widths.end(), hidden_widths.begin(), hidden_widths.end());
  mlp.layer_widths.push_back(1);

  // Row norm per activation. Log-sigmoid squashes variation by sigma' <= 1/4
  // per layer, so rows need norm ~4 for sample-to-sample differences to
  // survive a deep stack; tanh and the linear kinds need far less.
  double gain = 1.0;
  switch (hidden_activation) {
    case Activation::LogSigmoid:
      gain = 4.0;
      break;
    case Activation::TanSigmoid:
      gain = 1.5;
      break;
    case Activation::PositiveLinear:
    case Activation::Identity:
      gain = 1.0;
      break;
  }

  // Expected output of one unit, used to center the next layer's
  // pre-activations. Scaled inputs sit around 0.5 as well.
  double mean_activation = 0.5;
  switch (hidden_activation) {
    case Activation::LogSigmoid:
      mean_activation = 0.5;
      break;
    case Activation::TanSigmoid:
    case Activation::Identity:
      mean_activation = 0.0;
      break;
    case Activation::PositiveLinear:
      mean_activation = 0.25;
      break;
  }

  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < mlp.layer_widths.size(); ++l) {
    const auto fan_in = static_cast<std::size_t>(mlp.layer_widths[l]);
    const auto fan_out = static_cast<std::size_t>(mlp.layer_widths[l + 1]);
    const double mean_in = (l == 0) ? 0.5 : mean_activation;
    Matrix w(fan_out, fan_in);
    const double bound = gain * std::sqrt(3.0) / std::sqrt(static_cast<double>(fan_in));
    std::vector<double> b(fan_out);
    for (std::size_t i = 0; i < fan_out; ++i) {
      double row_sum = 0.0;
      for (std::size_t j = 0; j < fan_in; ++j) {
        w(i, j) = rng.uniform(-bound, bound);
        row_sum += w(i, j);
      }
      // Center the pre-activation at the expected input so units respond to
      // input differences instead of saturating on the input mean.
      b[i] = -mean_in * row_sum + rng.uniform(-0.5, 0.5);
    }
    mlp.weights.push_back(std::move(w));
    mlp.biases.push_back(std::move(b));
  }
  return mlp;
}

namespace {

void affine_layer(const Matrix& w, const std::vector<double>& b, std::span<const double> in,
                  std::vector<double>& out) {
  out.resize(w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const auto row = w.row(i);
    double sum = b[i];
    for (std::size_t j = 0; j < row.size(); ++j) sum += row[j] * in[j];
    out[i] = sum;
  }
}

}  // namespace

double forward_unchecked(const Mlp& mlp, std::span<const double> x) {
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next;
  for (std::size_t l = 0; l < mlp.layer_count(); ++l) {
    affine_layer(mlp.weights[l], mlp.biases[l], cur, next);
    const Activation act = mlp.activation_of_layer(l);
    for (double& v : next) v = activate(act, v);
    cur.swap(next);
  }
  return cur[0];
}

double forward(const Mlp& mlp, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(mlp.layer_widths.front())) {
    throw ShapeError("forward: expected " + std::to_string(mlp.layer_widths.front()) + " inputs, got " +
                     std::to_string(x.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw NumericError("forward: non-finite input");
  }
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next;
  for (std::size_t l = 0; l < mlp.layer_count(); ++l) {
    affine_layer(mlp.weights[l], mlp.biases[l], cur, next);
    const Activation act = mlp.activation_of_layer(l);
    for (double& v : next) {
      v = activate(act, v);
      if (!std::isfinite(v)) {
        throw NumericError("forward: non-finite value in layer " + std::to_string(l + 1));
      }
    }
    cur.swap(next);
  }
  return cur[0];
}

Matrix error_jacobian(const Mlp& mlp, std::span<const std::array<double, 5>> inputs,
                      std::span<const double> targets) {
  if (inputs.size() != targets.size() || inputs.empty()) {
    throw ShapeError("error_jacobian: inputs and targets must have equal non-zero length");
  }
  const std::size_t layers = mlp.layer_count();
  const std::size_t n_params = mlp.num_params();
  Matrix jac(inputs.size(), n_params);

  // Offsets of each layer's weight block and bias block in flatten() order.
  std::vector<std::size_t> w_offset(layers), b_offset(layers);
  std::size_t off = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    w_offset[l] = off;
    off += mlp.weights[l].rows() * mlp.weights[l].cols();
  }
  for (std::size_t l = 0; l < layers; ++l) {
    b_offset[l] = off;
    off += mlp.biases[l].size();
  }

  std::vector<std::vector<double>> activations(layers + 1);
  std::vector<std::vector<double>> pre(layers);
  std::vector<double> delta, delta_prev;

  for (std::size_t s = 0; s < inputs.size(); ++s) {
    activations[0].assign(inputs[s].begin(), inputs[s].end());
    for (std::size_t l = 0; l < layers; ++l) {
      affine_layer(mlp.weights[l], mlp.biases[l], activations[l], pre[l]);
      activations[l + 1].resize(pre[l].size());
      const Activation act = mlp.activation_of_layer(l);
      for (std::size_t i = 0; i < pre[l].size(); ++i) activations[l + 1][i] = activate(act, pre[l][i]);
    }

    // delta_l[i] = d(yhat)/d(z_l[i]); output layer is identity, so it starts
    // at 1. The row stores de/dw = -d(yhat)/dw.
    auto row = jac.row(s);
    delta.assign(1, 1.0);
    for (std::size_t li = layers; li > 0; --li) {
      const std::size_t l = li - 1;
      const Matrix& w = mlp.weights[l];
      for (std::size_t i = 0; i < w.rows(); ++i) {
        const double di = delta[i];
        double* wrow = &row[w_offset[l] + i * w.cols()];
        const auto& a_prev = activations[l];
        for (std::size_t j = 0; j < w.cols(); ++j) wrow[j] = -di * a_prev[j];
        row[b_offset[l] + i] = -di;
      }
      if (l == 0) break;
      delta_prev.assign(w.cols(), 0.0);
      for (std::size_t i = 0; i < w.rows(); ++i) {
        const double di = delta[i];
        if (di == 0.0) continue;
        const auto wrow = w.row(i);
        for (std::size_t j = 0; j < w.cols(); ++j) delta_prev[j] += wrow[j] * di;
      }
      const Activation act = mlp.activation_of_layer(l - 1);
      for (std::size_t j = 0; j < delta_prev.size(); ++j) {
        delta_prev[j] *= activate_derivative(act, pre[l - 1][j]);
      }
      delta.swap(delta_prev);
    }
  }
  return jac;
}

std::vector<double> flatten(const Mlp& mlp) {
  std::vector<double> flat;
  flat.reserve(mlp.num_params());
  for (const Matrix& w : mlp.weights) flat.insert(flat.end(), w.values().begin(), w.values().end());
  for (const auto& b : mlp.biases) flat.insert(flat.end(), b.begin(), b.end());
  return flat;
}

void unflatten(Mlp& mlp, std::span<const double> params) {
  if (params.size() != mlp.num_params()) {
    throw ShapeError("unflatten: expected " + std::to_string(mlp.num_params()) + " parameters, got " +
                     std::to_string(params.size()));
  }
  std::size_t off = 0;
  for (Matrix& w : mlp.weights) {
    auto dst = w.values();
    std::copy_n(params.begin() + off, dst.size(), dst.begin());
    off += dst.size();
  }
  for (auto& b : mlp.biases) {
    std::copy_n(params.begin() + off, b.size(), b.begin());
    off += b.size();
  }
}

Mlp unflattened(const Mlp& shape, std::span<const double> params) {
  Mlp copy = shape;
  unflatten(copy, params);
  return copy;
}

void save_model(const Mlp& mlp, const Normalizer& normalizer, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["layer_widths"] = mlp.layer_widths;
  doc["hidden_activation"] = to_string(mlp.hidden_activation);
  doc["weights"] = flatten(mlp);
  doc["normalizer"] = {{"min", normalizer.mins()}, {"max", normalizer.maxs()}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": invalid JSON: " + e.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != 1) {
      throw ParseError(path.string() + ": unsupported schema_version");
    }
    const auto widths = doc.at("layer_widths").get<std::vector<int>>();
    if (widths.size() < 3 || widths.front() != kInputWidth || widths.back() != 1) {
      throw ParseError(path.string() + ": layer_widths must be {5, hidden..., 1}");
    }
    for (int w : widths) {
      if (w < 1) throw ParseError(path.string() + ": layer widths must be positive");
    }
    const std::span<const int> hidden(widths.data() + 1, widths.size() - 2);
    Mlp mlp = build_mlp(hidden, activation_from_string(doc.at("hidden_activation").get<std::string>()), 0);
    const auto weights = doc.at("weights").get<std::vector<double>>();
    if (weights.size() != mlp.num_params()) {
      throw ParseError(path.string() + ": weight count " + std::to_string(weights.size()) +
                       " does not match layer widths (need " + std::to_string(mlp.num_params()) + ")");
    }
    for (double v : weights) {
      if (!std::isfinite(v)) throw ParseError(path.string() + ": non-finite weight");
    }
    unflatten(mlp, weights);
    const auto mins = doc.at("normalizer").at("min").get<std::array<double, 6>>();
    const auto maxs = doc.at("normalizer").at("max").get<std::array<double, 6>>();
    return LoadedModel{std::move(mlp), Normalizer(mins, maxs)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace scarcenet
