#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gensmooth/oracle.hpp"
#include "gensmooth/trace.hpp"

namespace gensmooth {

enum class Method { GD, L0L1GD, GDPS, STM, STM_MAX, ADGD, ADGD_SC };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct RunConfig {
  Method method = Method::L0L1GD;
  double eta = 0.0;       // step parameter for GD (the step itself), L0L1GD and STM
  double gamma = 0.25;    // AdGD ratio factor
  double lambda0 = 1e-3;  // AdGD warm-up step
  std::size_t N = 0;
  Vector x0;
  double grad_tol = 0.0;  // stop once |grad f| <= grad_tol; 0 disables
  /// Overrides the oracle's smoothness constants when set.
  std::optional<SmoothnessParams> params;

  /// Throws ConfigError for out-of-range hyperparameters.
  void validate() const;
  /// Soft warnings, e.g. eta above the range covered by the theory.
  std::vector<std::string> theory_warnings() const;
};

struct StepResult {
  Vector x_next;
  double step = 0.0;
  bool converged = false;
};

Vector gd_step(const Vector& x, const Vector& g, double step);

/// x - eta / (L0 + L1 |g|) g.
StepResult l0l1_gd_step(const Vector& x, const Vector& g, double eta, const SmoothnessParams& p);

/// Polyak step (f - f*) / |g|^2, evaluated as ((f - f*) / |g|) / |g| so tiny
/// gradients do not underflow. Zero when g = 0, f = f* or the step is not
/// representable, which also sets `converged`.
StepResult gd_ps_step(const Vector& x, const Vector& g, double f_val, double f_star);

enum class GRule { INSTANT, MAX };

struct StmState {
  Vector y;
  Vector z;
  double A = 0.0;
  double G = 0.0;
  std::size_t k = 0;
};

/// y = z = x0, A = 0, G seeded with L0 + L1 |grad f(x0)|.
StmState stm_init(const ObjectiveOracle& oracle, const Vector& x0, const SmoothnessParams& p);

struct StmStep {
  StmState state;
  Vector x_probe;
  double alpha = 0.0;
  double probe_grad_norm = 0.0;
};

StmStep stm_step(const StmState& state, const ObjectiveOracle& oracle, double eta,
                 const SmoothnessParams& p, GRule rule);

enum class AdgdRule { CONVEX, STRONGLY_CONVEX };

struct AdgdState {
  Vector x_prev;
  Vector grad_prev;
  double lambda = 0.0;
  double theta = std::numeric_limits<double>::infinity();
  /// S = lambda_1 theta_1 + sum lambda_k over completed stepsize updates.
  double sum_weights = 0.0;
  /// sum of w_k x^k over interior points whose weight is final.
  Vector weighted_sum;
  /// sum of the interior weights w_k added to `weighted_sum`.
  double weight_mass = 0.0;
  /// lambda_k (1 + theta_k) of the latest point; its weight is pending.
  double pending_weight = 0.0;
  /// sum of |x^{i+1} - x^i|^2 over steps that reached the current point.
  double sum_sq_steps = 0.0;
  std::size_t updates = 0;
  std::vector<std::string> warnings;
};

struct AdgdWarmup {
  AdgdState state;
  Vector x1;
};

/// x1 = x0 - lambda0 grad f(x0), theta_0 = +infinity.
AdgdWarmup adgd_init(const Vector& x0, const Vector& g0, double lambda0);

struct AdgdStep {
  AdgdState state;
  Vector x_next;
  double lambda = 0.0;
};

/// Stepsize update at x^k with gradient g, then x^{k+1} = x^k - lambda_k g.
AdgdStep adgd_step(const AdgdState& state, const Vector& x, const Vector& g, double gamma,
                   AdgdRule rule);

/// The averaged point of the completed steps, with x_final = x^N whose
/// weight is lambda_N (1 + theta_N).
Vector adgd_weighted_average(const AdgdState& state, const Vector& x_final,
                             double lambda_final, double theta_final);

/// Runs `config.N` steps (fewer on early stop) and records every iterate.
IterateTrace run(const ObjectiveOracle& oracle, const RunConfig& config);

/// CSV columns beyond the common ones for traces of this method.
std::vector<std::string> trace_csv_columns(Method m);

}  // namespace gensmooth
