#include "scarcenet/trainers.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "scarcenet/errors.hpp"
#include "scarcenet/util.hpp"

namespace scarcenet {

std::string_view to_string(TrainerKind k) {
  switch (k) {
    case TrainerKind::BayesianRegularization:
      return "br";
    case TrainerKind::LevenbergMarquardt:
      return "lm";
    case TrainerKind::GradientDescent:
      return "gd";
    case TrainerKind::QuasiNewton:
      return "qn";
  }
  return "?";
}

TrainerKind trainer_from_string(std::string_view name) {
  if (name == "br") return TrainerKind::BayesianRegularization;
  if (name == "lm") return TrainerKind::LevenbergMarquardt;
  if (name == "gd") return TrainerKind::GradientDescent;
  if (name == "qn") return TrainerKind::QuasiNewton;
  throw ParseError("unknown trainer '" + std::string(name) + "'");
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxEpochs:
      return "max_epochs";
    case StopReason::ValidationStreak:
      return "validation_streak";
    case StopReason::MuOverflow:
      return "mu_overflow";
    case StopReason::GradientVanished:
      return "gradient_vanished";
  }
  return "?";
}

void TrainRecord::write_csv(std::ostream& out) const {
  out << "epoch,E_D,E_W,F,val_mse,alpha,beta,gamma,mu\n";
  for (const EpochStats& e : epochs) {
    out << e.epoch << ',' << format_double(e.e_d) << ',' << format_double(e.e_w) << ','
        << format_double(e.objective) << ',' << format_double(e.val_mse) << ',' << format_double(e.alpha)
        << ',' << format_double(e.beta) << ',' << format_double(e.gamma) << ',' << format_double(e.mu)
        << '\n';
  }
}

bool EarlyStopper::observe(double val_mse) {
  if (std::isfinite(prev_) && val_mse > prev_) {
    ++streak_;
  } else {
    streak_ = 0;
  }
  prev_ = val_mse;
  return streak_ >= fail_limit_;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double sum_squares(std::span<const double> v) { return dot(v, v); }

// beta*J^T e + alpha*w, the half-gradient of F.
std::vector<double> objective_gradient(const Matrix& jacobian, std::span<const double> residuals,
                                       std::span<const double> params, double alpha, double beta) {
  std::vector<double> g = tmatvec(jacobian, residuals);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = beta * g[i] + alpha * params[i];
  return g;
}

}  // namespace

std::vector<double> lm_step_direct(const Matrix& jacobian, std::span<const double> residuals,
                                   std::span<const double> params, double alpha, double beta, double mu) {
  const std::size_t n_params = jacobian.cols();
  Matrix h = matmul(transpose(jacobian), jacobian);
  const double damping = alpha + mu;
  for (std::size_t i = 0; i < n_params; ++i) {
    for (std::size_t j = 0; j < n_params; ++j) h(i, j) *= beta;
    h(i, i) += damping;
  }
  const std::vector<double> g = objective_gradient(jacobian, residuals, params, alpha, beta);
  std::vector<double> dw = solve_spd(h, g);
  for (double& v : dw) v = -v;
  return dw;
}

std::vector<double> lm_step_dual(const Matrix& jacobian, std::span<const double> residuals,
                                 std::span<const double> params, double alpha, double beta, double mu) {
  // (beta J^T J + d I)^{-1} g = (g - beta J^T (d I + beta G)^{-1} J g) / d
  // with G = J J^T; exact by the Woodbury identity, and O(n^2 N) instead of
  // O(N^3) when residuals n are few and parameters N are many.
  const double damping = alpha + mu;
  const std::vector<double> g = objective_gradient(jacobian, residuals, params, alpha, beta);
  Matrix m = gram(jacobian);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= beta;
    m(i, i) += damping;
  }
  const std::vector<double> jg = matvec(jacobian, g);
  const std::vector<double> u = solve_spd(m, jg);
  std::vector<double> correction = tmatvec(jacobian, u);
  std::vector<double> dw(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) dw[i] = -(g[i] - beta * correction[i]) / damping;
  return dw;
}

std::vector<double> lm_step(const Matrix& jacobian, std::span<const double> residuals,
                            std::span<const double> params, double alpha, double beta, double mu) {
  if (jacobian.cols() <= jacobian.rows()) {
    return lm_step_direct(jacobian, residuals, params, alpha, beta, mu);
  }
  return lm_step_dual(jacobian, residuals, params, alpha, beta, mu);
}

double br_effective_params(double alpha, double beta, const Matrix& jacobian_gram, std::size_t n_params) {
  if (alpha == 0.0) return static_cast<double>(n_params);
  Matrix m = jacobian_gram;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= beta;
    m(i, i) += alpha;
  }
  const Matrix x = solve_spd(m, jacobian_gram);
  double trace = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) trace += x(i, i);
  const double gamma = beta * trace;
  return std::clamp(gamma, 0.0, static_cast<double>(n_params));
}

BrHyperparams br_update_hyperparams(double gamma, double e_w, double e_d, std::size_t n_targets) {
  BrHyperparams hp;
  const double n = static_cast<double>(n_targets);
  hp.gamma = std::min(gamma, n);
  hp.alpha = (e_w == 0.0) ? kHyperparamCap : std::min(hp.gamma / (2.0 * e_w), kHyperparamCap);
  // When the fit saturates the data (gamma -> n) the degrees-of-freedom
  // correction in (n - gamma) degenerates to numerical noise; keep at least
  // one residual degree of freedom in the noise estimate.
  hp.beta = std::min(std::max(n - hp.gamma, 1.0) / (2.0 * e_d), kHyperparamCap);
  return hp;
}

namespace {

struct LoopState {
  std::vector<double> w;
  std::vector<double> e;
  double e_d = 0;
  double e_w = 0;
};

class EpochLoop {
 public:
  EpochLoop(LeastSquaresModel& model, const TrainConfig& cfg) : model_(model), cfg_(cfg) {}

  TrainRecord run() {
    const std::size_t n = model_.residual_count();
    if (n == 0) throw TrainError("training set is empty");
    if (cfg_.max_epochs < 1) throw TrainError("max_epochs must be >= 1");
    if (!(cfg_.eta > 0)) throw TrainError("eta must be positive");
    if (!(cfg_.mu_dec > 0 && cfg_.mu_dec < 1 && cfg_.mu_inc > 1)) {
      throw TrainError("mu schedule must satisfy 0 < mu_dec < 1 < mu_inc");
    }

    mu_ = cfg_.mu0;
    state_.w = model_.params();
    state_.e.resize(n);
    model_.residuals(state_.e);
    state_.e_d = sum_squares(state_.e);
    state_.e_w = sum_squares(state_.w);
    if (!std::isfinite(state_.e_d)) throw TrainError("non-finite training error at epoch 0");

    const bool has_val = model_.has_validation();
    EarlyStopper stopper(cfg_.val_fail_limit);
    std::vector<double> best_w;
    double best_val = std::numeric_limits<double>::infinity();

    for (int epoch = 1; epoch <= cfg_.max_epochs; ++epoch) {
      bool stop = false;
      EpochStats stats;
      stats.epoch = epoch;
      switch (cfg_.trainer) {
        case TrainerKind::BayesianRegularization:
        case TrainerKind::LevenbergMarquardt:
          stop = lm_epoch(stats);
          break;
        case TrainerKind::GradientDescent:
          stop = gd_epoch(stats);
          break;
        case TrainerKind::QuasiNewton:
          stop = qn_epoch(stats);
          break;
      }

      stats.e_d = state_.e_d;
      stats.e_w = state_.e_w;
      if (has_val) {
        stats.val_mse = model_.validation_mse();
        if (stats.val_mse < best_val) {
          best_val = stats.val_mse;
          best_w = state_.w;
          record_.best_epoch = epoch;
        }
      }
      record_.epochs.push_back(stats);
      if (stop) break;
      if (has_val && stopper.observe(stats.val_mse)) {
        record_.stop_reason = StopReason::ValidationStreak;
        break;
      }
    }

    if (!best_w.empty()) {
      model_.set_params(best_w);
    } else {
      record_.best_epoch = record_.epochs.empty() ? 0 : record_.epochs.back().epoch;
    }
    return std::move(record_);
  }

 private:
  // One LM / Bayesian-regularization epoch. Returns true when training must
  // stop (mu overflow, vanished gradient).
  bool lm_epoch(EpochStats& stats) {
    const std::size_t n_params = model_.num_params();
    const Matrix jacobian = model_.jacobian();
    const double f_before = beta_ * state_.e_d + alpha_ * state_.e_w;
    stats.objective_before = f_before;
    stats.alpha = alpha_;
    stats.beta = beta_;
    stats.mu = mu_;

    const std::vector<double> g = objective_gradient(jacobian, state_.e, state_.w, alpha_, beta_);
    if (sum_squares(g) == 0.0) {
      stats.objective = f_before;
      record_.stop_reason = StopReason::GradientVanished;
      return true;
    }

    LoopState trial;
    trial.e.resize(state_.e.size());
    bool accepted = false;
    while (!accepted) {
      bool factorized = true;
      std::vector<double> dw;
      try {
        dw = lm_step(jacobian, state_.e, state_.w, alpha_, beta_, mu_);
      } catch (const FactorizationError&) {
        factorized = false;  // raise mu and retry
      }
      if (factorized) {
        trial.w = state_.w;
        for (std::size_t i = 0; i < dw.size(); ++i) trial.w[i] += dw[i];
        model_.set_params(trial.w);
        model_.residuals(trial.e);
        trial.e_d = sum_squares(trial.e);
        trial.e_w = sum_squares(trial.w);
        const double f_trial = beta_ * trial.e_d + alpha_ * trial.e_w;
        if (std::isfinite(f_trial) && f_trial < f_before) {
          state_ = std::move(trial);
          // mu never drops below its starting value: near-singular
          // Gauss-Newton systems (few residuals, many parameters) otherwise
          // admit huge steps along the null space that wreck the fit.
          mu_ = std::max(mu_ * cfg_.mu_dec, cfg_.mu0);
          stats.objective = f_trial;
          stats.step_accepted = true;
          accepted = true;
          break;
        }
      }
      mu_ *= cfg_.mu_inc;
      if (mu_ > cfg_.mu_max) {
        model_.set_params(state_.w);  // discard the failed trial
        stats.objective = f_before;
        stats.mu = mu_;
        record_.stop_reason = StopReason::MuOverflow;
        return true;
      }
    }
    stats.mu = mu_;

    if (cfg_.trainer == TrainerKind::BayesianRegularization) {
      // Hyperparameter re-estimation reuses this epoch's Gauss-Newton
      // curvature (the Jacobian from before the step).
      const double gamma = br_effective_params(alpha_, beta_, gram(jacobian), n_params);
      stats.gamma = gamma;
      if (state_.e_d == 0.0) {
        record_.stop_reason = StopReason::GradientVanished;
        return true;
      }
      // beta estimates the inverse noise level; the noise floor is the best
      // fit achieved so far, not the current (possibly decay-damaged) one.
      min_e_d_ = std::min(min_e_d_, state_.e_d);
      const BrHyperparams hp = br_update_hyperparams(gamma, state_.e_w, min_e_d_, state_.e.size());
      alpha_ = hp.alpha;
      beta_ = hp.beta;
      stats.alpha = alpha_;
      stats.beta = beta_;
      stats.gamma = hp.gamma;
    }
    return false;
  }

  bool gd_epoch(EpochStats& stats) {
    const Matrix jacobian = model_.jacobian();
    stats.objective_before = state_.e_d;
    // Gradient of E_D: 2 J^T e.
    std::vector<double> grad = tmatvec(jacobian, state_.e);
    for (double& v : grad) v *= 2.0;
    if (sum_squares(grad) == 0.0) {
      stats.objective = state_.e_d;
      record_.stop_reason = StopReason::GradientVanished;
      return true;
    }
    for (std::size_t i = 0; i < state_.w.size(); ++i) state_.w[i] -= cfg_.eta * grad[i];
    model_.set_params(state_.w);
    model_.residuals(state_.e);
    state_.e_d = sum_squares(state_.e);
    state_.e_w = sum_squares(state_.w);
    if (!std::isfinite(state_.e_d)) {
      throw TrainError("gradient descent diverged at epoch " + std::to_string(stats.epoch));
    }
    stats.objective = state_.e_d;
    stats.step_accepted = true;
    return false;
  }

  bool qn_epoch(EpochStats& stats) {
    const std::size_t n_params = model_.num_params();
    stats.objective_before = state_.e_d;
    if (qn_grad_.empty()) {
      const Matrix jacobian = model_.jacobian();
      qn_grad_ = tmatvec(jacobian, state_.e);
      for (double& v : qn_grad_) v *= 2.0;
      qn_hinv_ = Matrix::identity(n_params);
    }
    if (sum_squares(qn_grad_) == 0.0) {
      stats.objective = state_.e_d;
      record_.stop_reason = StopReason::GradientVanished;
      return true;
    }

    std::vector<double> direction = matvec(qn_hinv_, qn_grad_);
    for (double& v : direction) v = -v;
    double slope = dot(direction, qn_grad_);
    if (slope >= 0.0) {
      // Curvature information went bad; restart from steepest descent.
      qn_hinv_ = Matrix::identity(n_params);
      for (std::size_t i = 0; i < direction.size(); ++i) direction[i] = -qn_grad_[i];
      slope = dot(direction, qn_grad_);
    }

    // Armijo backtracking from a unit step.
    constexpr double kArmijo = 1e-4;
    constexpr int kMaxHalvings = 30;
    double step = 1.0;
    bool found = false;
    LoopState trial;
    trial.e.resize(state_.e.size());
    for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
      trial.w = state_.w;
      for (std::size_t i = 0; i < trial.w.size(); ++i) trial.w[i] += step * direction[i];
      model_.set_params(trial.w);
      model_.residuals(trial.e);
      trial.e_d = sum_squares(trial.e);
      if (std::isfinite(trial.e_d) && trial.e_d <= state_.e_d + kArmijo * step * slope) {
        found = true;
        break;
      }
      step *= 0.5;
    }
    if (!found) {
      // No step this epoch; the validation error simply repeats.
      model_.set_params(state_.w);
      stats.objective = state_.e_d;
      return false;
    }

    const Matrix jacobian_new = model_.jacobian();
    std::vector<double> grad_new = tmatvec(jacobian_new, trial.e);
    for (double& v : grad_new) v *= 2.0;

    std::vector<double> s(n_params), y(n_params);
    for (std::size_t i = 0; i < n_params; ++i) {
      s[i] = trial.w[i] - state_.w[i];
      y[i] = grad_new[i] - qn_grad_[i];
    }
    const double sy = dot(s, y);
    if (sy > 0.0) {
      // Inverse BFGS update:
      // H <- H + (1 + y^T H y / s^T y) (s s^T)/(s^T y) - (H y s^T + s y^T H)/(s^T y)
      const std::vector<double> hy = matvec(qn_hinv_, y);
      const double yhy = dot(y, hy);
      const double rho = 1.0 / sy;
      const double c = (1.0 + yhy * rho) * rho;
      for (std::size_t i = 0; i < n_params; ++i) {
        for (std::size_t j = 0; j < n_params; ++j) {
          qn_hinv_(i, j) += c * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
        }
      }
    }

    state_.w = std::move(trial.w);
    state_.e = std::move(trial.e);
    state_.e_d = trial.e_d;
    state_.e_w = sum_squares(state_.w);
    qn_grad_ = std::move(grad_new);
    stats.objective = state_.e_d;
    stats.step_accepted = true;
    return false;
  }

  LeastSquaresModel& model_;
  const TrainConfig& cfg_;
  TrainRecord record_;
  LoopState state_;
  double alpha_ = 0.0;  // BR starts at (alpha, beta) = (0, 1); LM keeps them fixed
  double beta_ = 1.0;
  double mu_ = 0.0;
  double min_e_d_ = std::numeric_limits<double>::infinity();
  Matrix qn_hinv_;
  std::vector<double> qn_grad_;
};

}  // namespace

TrainRecord train_model(LeastSquaresModel& model, const TrainConfig& cfg) {
  EpochLoop loop(model, cfg);
  return loop.run();
}

MlpProblem::MlpProblem(Mlp& mlp, std::span<const std::array<double, 5>> train_inputs,
                       std::span<const double> train_targets,
                       std::span<const std::array<double, 5>> val_inputs,
                       std::span<const double> val_targets)
    : mlp_(mlp),
      train_inputs_(train_inputs),
      train_targets_(train_targets),
      val_inputs_(val_inputs),
      val_targets_(val_targets) {
  if (train_inputs_.size() != train_targets_.size() || val_inputs_.size() != val_targets_.size()) {
    throw TrainError("inputs and targets must have equal lengths");
  }
}

std::size_t MlpProblem::num_params() const { return mlp_.num_params(); }

std::vector<double> MlpProblem::params() const { return flatten(mlp_); }

void MlpProblem::set_params(std::span<const double> p) { unflatten(mlp_, p); }

std::size_t MlpProblem::residual_count() const { return train_targets_.size(); }

void MlpProblem::residuals(std::span<double> out) const {
  for (std::size_t i = 0; i < train_targets_.size(); ++i) {
    out[i] = train_targets_[i] - forward_unchecked(mlp_, train_inputs_[i]);
  }
}

Matrix MlpProblem::jacobian() const { return error_jacobian(mlp_, train_inputs_, train_targets_); }

bool MlpProblem::has_validation() const { return !val_targets_.empty(); }

double MlpProblem::validation_mse() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < val_targets_.size(); ++i) {
    const double e = val_targets_[i] - forward_unchecked(mlp_, val_inputs_[i]);
    sum += e * e;
  }
  return sum / static_cast<double>(val_targets_.size());
}

TrainResult train(const Mlp& mlp, const TrainingSet& data, const TrainConfig& cfg) {
  TrainResult result{mlp, {}};
  MlpProblem problem(result.model, data.train_inputs, data.train_targets, data.val_inputs,
                     data.val_targets);
  result.record = train_model(problem, cfg);
  return result;
}

}  // namespace scarcenet
