#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "scarcenet/matrix.hpp"
#include "scarcenet/network.hpp"

namespace scarcenet {

enum class TrainerKind { BayesianRegularization, LevenbergMarquardt, GradientDescent, QuasiNewton };

std::string_view to_string(TrainerKind k);
TrainerKind trainer_from_string(std::string_view name);

enum class StopReason { MaxEpochs, ValidationStreak, MuOverflow, GradientVanished };
std::string_view to_string(StopReason r);

struct TrainConfig {
  TrainerKind trainer = TrainerKind::BayesianRegularization;
  int max_epochs = 100;
  int val_fail_limit = 10;   // consecutive validation increases before stopping
  double eta = 0.5;          // gradient descent step size; other trainers size their own steps
  double mu0 = 0.005;        // LM damping schedule
  double mu_inc = 10.0;
  double mu_dec = 0.1;
  double mu_max = 1e10;
  std::uint64_t seed = 0;    // echoed into reports; the epoch routines themselves are deterministic
};

struct EpochStats {
  int epoch = 0;  // 1-based
  double e_d = 0;                // training SSE after the epoch
  double e_w = 0;                // sum of squared parameters after the epoch
  double objective = 0;          // F = beta*E_D + alpha*E_W at the alpha/beta that scored the step
  double objective_before = 0;   // F before the step at the same alpha/beta
  double val_mse = std::numeric_limits<double>::quiet_NaN();
  double alpha = 0;              // hyperparameters in force after the epoch
  double beta = 1;
  double gamma = std::numeric_limits<double>::quiet_NaN();  // effective parameters (BR only)
  double mu = std::numeric_limits<double>::quiet_NaN();     // LM damping after the epoch
  bool step_accepted = false;
};

struct TrainRecord {
  std::vector<EpochStats> epochs;
  StopReason stop_reason = StopReason::MaxEpochs;
  int best_epoch = 0;  // epoch whose weights were returned; 0 = initial weights

  // Columns: epoch,E_D,E_W,F,val_mse,alpha,beta,gamma,mu
  void write_csv(std::ostream& out) const;
};

// Residual view of a least-squares regression problem. train_model drives any
// implementation; MlpProblem is the production one, tests plug in closed-form
// models.
class LeastSquaresModel {
 public:
  virtual ~LeastSquaresModel() = default;
  virtual std::size_t num_params() const = 0;
  virtual std::vector<double> params() const = 0;
  virtual void set_params(std::span<const double> p) = 0;
  virtual std::size_t residual_count() const = 0;
  // e_i = target_i - prediction_i at the current parameters.
  virtual void residuals(std::span<double> out) const = 0;
  // Rows de_i/dw; evaluated at the current parameters.
  virtual Matrix jacobian() const = 0;
  virtual bool has_validation() const { return false; }
  virtual double validation_mse() const { return std::numeric_limits<double>::quiet_NaN(); }
};

// Runs cfg.trainer for up to max_epochs with validation-based early stopping.
// When validation data exists the model is left at the best-validation
// snapshot; otherwise at the last accepted step.
TrainRecord train_model(LeastSquaresModel& model, const TrainConfig& cfg);

class MlpProblem final : public LeastSquaresModel {
 public:
  MlpProblem(Mlp& mlp, std::span<const std::array<double, 5>> train_inputs,
             std::span<const double> train_targets, std::span<const std::array<double, 5>> val_inputs,
             std::span<const double> val_targets);

  std::size_t num_params() const override;
  std::vector<double> params() const override;
  void set_params(std::span<const double> p) override;
  std::size_t residual_count() const override;
  void residuals(std::span<double> out) const override;
  Matrix jacobian() const override;
  bool has_validation() const override;
  double validation_mse() const override;

 private:
  Mlp& mlp_;
  std::span<const std::array<double, 5>> train_inputs_;
  std::span<const double> train_targets_;
  std::span<const std::array<double, 5>> val_inputs_;
  std::span<const double> val_targets_;
};

struct TrainingSet {
  std::vector<std::array<double, 5>> train_inputs;
  std::vector<double> train_targets;
  std::vector<std::array<double, 5>> val_inputs;  // may be empty
  std::vector<double> val_targets;
};

struct TrainResult {
  Mlp model;
  TrainRecord record;
};

// Trains a copy of the network on scaled data.
TrainResult train(const Mlp& mlp, const TrainingSet& data, const TrainConfig& cfg);

// --- pieces of the epoch loop, exposed for direct testing ---

// dw = -(beta J^T J + (alpha+mu) I)^{-1} (beta J^T e + alpha w). Picks the
// cheaper of the two algebraically identical routes: the parameter-space
// solve, or the sample-space (Woodbury) solve when parameters outnumber
// residuals.
std::vector<double> lm_step(const Matrix& jacobian, std::span<const double> residuals,
                            std::span<const double> params, double alpha, double beta, double mu);
std::vector<double> lm_step_direct(const Matrix& jacobian, std::span<const double> residuals,
                                   std::span<const double> params, double alpha, double beta, double mu);
std::vector<double> lm_step_dual(const Matrix& jacobian, std::span<const double> residuals,
                                 std::span<const double> params, double alpha, double beta, double mu);

// gamma = N - alpha*tr(H^{-1}) with H = beta J^T J + alpha I, evaluated in
// sample space as beta*tr((alpha I + beta G)^{-1} G) over the Gram matrix
// G = J J^T. gamma = N exactly when alpha == 0.
double br_effective_params(double alpha, double beta, const Matrix& jacobian_gram, std::size_t n_params);

struct BrHyperparams {
  double alpha = 0;
  double beta = 1;
  double gamma = 0;  // effective parameter count actually used for the update
};

// alpha <- gamma/(2 E_W), beta <- (n - gamma)/(2 E_D), both capped at 1e10.
// The incoming gamma is clamped to n_targets first: for any alpha > 0 the
// effective parameter count is at most the number of residuals, and the
// alpha = 0 bootstrap value (gamma = N) would otherwise swing alpha far past
// any useful scale when parameters outnumber samples. E_W = 0 pins alpha at
// the cap. When gamma reaches n the degrees-of-freedom correction in the
// beta estimate collapses to or below zero; beta then falls back to the
// uncorrected noise estimate n/(2 E_D). Caller must handle E_D = 0 (training
// converged).
BrHyperparams br_update_hyperparams(double gamma, double e_w, double e_d, std::size_t n_targets);

inline constexpr double kHyperparamCap = 1e10;

// Streak counter for the early-stopping rule: stop after `fail_limit`
// consecutive strict increases of the validation error.
class EarlyStopper {
 public:
  explicit EarlyStopper(int fail_limit) : fail_limit_(fail_limit) {}

  // Returns true when training should stop.
  bool observe(double val_mse);
  int streak() const { return streak_; }

 private:
  int fail_limit_;
  int streak_ = 0;
  double prev_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace scarcenet
