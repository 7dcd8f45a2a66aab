#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "scarcenet/dataset.hpp"
#include "scarcenet/matrix.hpp"

namespace scarcenet {

enum class Activation { LogSigmoid, TanSigmoid, PositiveLinear, Identity };

double activate(Activation a, double z);
double activate_derivative(Activation a, double z);
std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view name);

inline constexpr int kInputWidth = 5;
inline constexpr int kMaxHiddenLayers = 15;

// Fully connected feedforward network, 5 inputs -> 1 output. Hidden layers
// share one activation; the output neuron is linear on scaled targets.
struct Mlp {
  std::vector<int> layer_widths;  // {5, h_1, ..., h_L, 1}
  Activation hidden_activation = Activation::LogSigmoid;
  std::vector<Matrix> weights;    // layer l: layer_widths[l+1] x layer_widths[l]
  std::vector<std::vector<double>> biases;

  std::size_t layer_count() const { return weights.size(); }  // hidden + output
  std::size_t hidden_layer_count() const { return weights.size() - 1; }
  std::size_t num_params() const;
  Activation activation_of_layer(std::size_t layer) const {
    return layer + 1 == weights.size() ? Activation::Identity : hidden_activation;
  }

  bool operator==(const Mlp&) const = default;
};

// Uniform weights with an activation-dependent row norm and biases centering
// each pre-activation at the layer's expected input, so deep sigmoid stacks
// stay responsive to input differences. Bit-deterministic for a given seed.
Mlp build_mlp(std::span<const int> hidden_widths, Activation hidden_activation, std::uint64_t seed);

// Validates the input length and that every layer output stays finite;
// throws NumericError naming the first offending layer.
double forward(const Mlp& mlp, std::span<const double> x);
// No finiteness checks; trial steps in the trainers probe this and reject
// non-finite objectives themselves.
double forward_unchecked(const Mlp& mlp, std::span<const double> x);

// Rows are de_i/dw with e_i = target_i - forward(x_i), columns in
// flatten() order. Reverse accumulation, one backward pass per sample.
Matrix error_jacobian(const Mlp& mlp, std::span<const std::array<double, 5>> inputs,
                      std::span<const double> targets);

// Flat parameter order: weight matrices of layers 1..L+1 (row-major), then
// bias vectors of layers 1..L+1.
std::vector<double> flatten(const Mlp& mlp);
void unflatten(Mlp& mlp, std::span<const double> params);
Mlp unflattened(const Mlp& shape, std::span<const double> params);

struct LoadedModel {
  Mlp mlp;
  Normalizer normalizer;
};

// JSON model file: schema_version, layer_widths, hidden_activation, weights
// (flatten() order), normalizer {min, max}.
void save_model(const Mlp& mlp, const Normalizer& normalizer, const std::filesystem::path& path);
LoadedModel load_model(const std::filesystem::path& path);

}  // namespace scarcenet
