#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "gensmooth/optimizers.hpp"

namespace gensmooth {

enum class StochasticMethod { L0L1SGD, SGDPS };

std::string_view stochastic_method_name(StochasticMethod m);
std::optional<StochasticMethod> parse_stochastic_method(std::string_view name);

struct StochasticRunConfig {
  StochasticMethod method = StochasticMethod::L0L1SGD;
  double eta = 0.0;
  std::size_t N = 0;
  Vector x0;
  std::uint64_t seed = 20240923;
  std::size_t replicate_count = 64;
  /// Overrides the oracle's per-component constants when set.
  std::optional<SmoothnessParams> params;

  void validate() const;
  std::vector<std::string> theory_warnings() const;
};

/// x - eta / (L0 + L1 |grad f_i(x)|) grad f_i(x).
StepResult l0l1_sgd_step(const Vector& x, std::size_t i, const ObjectiveOracle& oracle,
                         double eta, const SmoothnessParams& p);

/// Polyak step on component i against its optimal value f_i(x*).
StepResult sgd_ps_step(const Vector& x, std::size_t i, const ObjectiveOracle& oracle);

/// Sampled index of step k for a given seed.
std::size_t sample_index(std::uint64_t seed, std::uint64_t k, std::size_t n);

/// Single seeded run. Record k stores the full f(x^k), |grad f(x^k)| and the
/// sampled component index used to leave x^k (state column "index").
IterateTrace run_stochastic(const ObjectiveOracle& oracle, const StochasticRunConfig& config);

struct CriterionSummary {
  double cap = 0.0;  // nu L0 / (4 n L1^2)
  std::size_t replicates = 0;
  std::vector<double> mean;         // E[min{cap, f(x^k) - f*}] estimate per k
  std::vector<double> stderr_mean;  // its standard error
  std::vector<double> running_min;  // min over j <= k of mean[j]
  std::vector<std::size_t> running_argmin;
  std::vector<double> exceed_frequency;  // fraction of replicates with f - f* >= cap
};

/// Monte-Carlo estimate over replicates with seeds seed, seed+1, ...
CriterionSummary expected_min_criterion(const ObjectiveOracle& oracle,
                                        const StochasticRunConfig& config,
                                        const SmoothnessParams& p, double nu);

/// CSV `k,mean_min_criterion,stderr,running_min`.
void write_criterion_csv(std::ostream& out, const CriterionSummary& summary);

}  // namespace gensmooth
