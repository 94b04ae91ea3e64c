#include "gensmooth/stochastic.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "gensmooth/format.hpp"
#include "gensmooth/parallel.hpp"
#include "gensmooth/rng.hpp"
#include "gensmooth/scalar_core.hpp"

namespace gensmooth {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_component(const ObjectiveOracle& oracle, std::size_t i) {
  if (i >= oracle.component_count())
    throw ConfigError("component index " + std::to_string(i) + " out of range for " +
                      oracle.name());
}

SmoothnessParams resolve_params(const ObjectiveOracle& oracle, const StochasticRunConfig& cfg) {
  if (cfg.params) return *cfg.params;
  if (oracle.component_smoothness()) return *oracle.component_smoothness();
  throw ConfigError(oracle.name() + ": no per-component smoothness constants");
}

}  // namespace

std::string_view stochastic_method_name(StochasticMethod m) {
  return m == StochasticMethod::L0L1SGD ? "L0L1SGD" : "SGDPS";
}

std::optional<StochasticMethod> parse_stochastic_method(std::string_view name) {
  if (name == "L0L1SGD") return StochasticMethod::L0L1SGD;
  if (name == "SGDPS") return StochasticMethod::SGDPS;
  return std::nullopt;
}

void StochasticRunConfig::validate() const {
  if (x0.size() == 0 || !x0.allFinite()) throw ConfigError("x0 must be nonempty and finite");
  if (method == StochasticMethod::L0L1SGD && (!(eta > 0.0) || !std::isfinite(eta)))
    throw ConfigError("eta must be positive");
  if (replicate_count < 1) throw ConfigError("replicate_count must be at least 1");
  if (params) params->validate();
}

std::vector<std::string> StochasticRunConfig::theory_warnings() const {
  std::vector<std::string> out;
  if (method == StochasticMethod::L0L1SGD && eta > nu() / 2.0)
    out.push_back("L0L1SGD: eta exceeds nu/2, outside the range covered by the convergence theory");
  return out;
}

StepResult l0l1_sgd_step(const Vector& x, std::size_t i, const ObjectiveOracle& oracle,
                         double eta, const SmoothnessParams& p) {
  check_component(oracle, i);
  const Vector g = oracle.component_gradient(i, x);
  if (!g.allFinite()) throw EvaluationError("non-finite component gradient");
  StepResult r;
  r.step = eta / (p.L0 + p.L1 * g.stableNorm());
  r.x_next = x - r.step * g;
  return r;
}

StepResult sgd_ps_step(const Vector& x, std::size_t i, const ObjectiveOracle& oracle) {
  if (!oracle.component_optima()) throw ConfigError(oracle.name() + ": component optima unknown");
  check_component(oracle, i);
  const double fi = oracle.component_value(i, x);
  const Vector g = oracle.component_gradient(i, x);
  if (!std::isfinite(fi) || !g.allFinite()) throw EvaluationError("non-finite component evaluation");
  const double fi_star = (*oracle.component_optima())[i];
  if (fi < fi_star - 1e-12 * std::max(1.0, std::abs(fi_star)))
    throw InconsistentOptimumError("component value below its declared optimum");
  StepResult r;
  const double gn = g.stableNorm();
  const double step = gn > 0.0 ? (fi - fi_star) / gn / gn : 0.0;
  if (fi <= fi_star || !(step > 0.0) || !std::isfinite(step)) {
    r.x_next = x;
    r.step = 0.0;
    return r;
  }
  r.step = step;
  r.x_next = x - r.step * g;
  return r;
}

std::size_t sample_index(std::uint64_t seed, std::uint64_t k, std::size_t n) {
  return static_cast<std::size_t>(CounterRng(seed).index(k, n));
}

IterateTrace run_stochastic(const ObjectiveOracle& oracle, const StochasticRunConfig& config) {
  config.validate();
  const std::size_t n = oracle.component_count();
  if (n == 0) throw ConfigError(oracle.name() + " is not a finite sum");
  if (config.x0.size() != oracle.dimension()) throw ConfigError("x0 has the wrong length");
  const SmoothnessParams p = config.method == StochasticMethod::L0L1SGD
                                 ? resolve_params(oracle, config)
                                 : SmoothnessParams{};
  const auto& opt = oracle.optimum();

  IterateTrace trace(std::string(stochastic_method_name(config.method)), config.x0.size(),
                     {"index"});
  Vector x = config.x0;
  for (std::size_t k = 0;; ++k) {
    try {
      const double f = checked_value(oracle, x);
      const double gn = checked_gradient(oracle, x).stableNorm();
      const double dist = opt ? (x - opt->x).stableNorm() : kNaN;
      if (k == config.N) {
        trace.append(x, f, gn, kNaN, dist, {kNaN});
        break;
      }
      const std::size_t i = sample_index(config.seed, k, n);
      StepResult s = config.method == StochasticMethod::L0L1SGD
                         ? l0l1_sgd_step(x, i, oracle, config.eta, p)
                         : sgd_ps_step(x, i, oracle);
      trace.append(x, f, gn, s.step, dist, {static_cast<double>(i)});
      x = std::move(s.x_next);
    } catch (const Error& e) {
      throw RunError(k, e.what());
    }
  }
  if (opt) trace.f_star = opt->f;
  trace.budget = config.N;
  trace.warnings = config.theory_warnings();
  return trace;
}

CriterionSummary expected_min_criterion(const ObjectiveOracle& oracle,
                                        const StochasticRunConfig& config,
                                        const SmoothnessParams& p, double nu) {
  if (config.replicate_count < 2) throw ConfigError("expected_min_criterion needs two replicates");
  if (!oracle.optimum()) throw ConfigError(oracle.name() + ": criterion needs f*");
  const std::size_t n = oracle.component_count();
  if (n == 0) throw ConfigError(oracle.name() + " is not a finite sum");
  const double f_star = oracle.optimum()->f;

  CriterionSummary out;
  out.cap = p.L1 > 0.0 ? nu * p.L0 / (4.0 * static_cast<double>(n) * p.L1 * p.L1)
                       : std::numeric_limits<double>::infinity();
  out.replicates = config.replicate_count;

  const std::size_t R = config.replicate_count;
  std::vector<std::vector<double>> gaps(R);
  parallel_for(R, [&](std::size_t r) {
    StochasticRunConfig rc = config;
    rc.seed = config.seed + r;
    const IterateTrace t = run_stochastic(oracle, rc);
    gaps[r].resize(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) gaps[r][k] = t.f(k) - f_star;
  });

  const std::size_t K = config.N + 1;
  out.mean.assign(K, 0.0);
  out.stderr_mean.assign(K, 0.0);
  out.exceed_frequency.assign(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    double sum = 0.0;
    double exceed = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      sum += std::min(out.cap, gaps[r][k]);
      if (gaps[r][k] >= out.cap) exceed += 1.0;
    }
    const double mean = sum / static_cast<double>(R);
    double ss = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      const double d = std::min(out.cap, gaps[r][k]) - mean;
      ss += d * d;
    }
    out.mean[k] = mean;
    out.stderr_mean[k] = std::sqrt(ss / static_cast<double>(R - 1) / static_cast<double>(R));
    out.exceed_frequency[k] = exceed / static_cast<double>(R);
  }
  out.running_min.resize(K);
  out.running_argmin.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    if (k == 0 || out.mean[k] < out.running_min[k - 1]) {
      out.running_min[k] = out.mean[k];
      out.running_argmin[k] = k;
    } else {
      out.running_min[k] = out.running_min[k - 1];
      out.running_argmin[k] = out.running_argmin[k - 1];
    }
  }
  return out;
}

void write_criterion_csv(std::ostream& out, const CriterionSummary& summary) {
  out << "k,mean_min_criterion,stderr,running_min\n";
  for (std::size_t k = 0; k < summary.mean.size(); ++k)
    out << k << ',' << format_double(summary.mean[k]) << ','
        << format_double(summary.stderr_mean[k]) << ',' << format_double(summary.running_min[k])
        << '\n';
}

}  // namespace gensmooth
