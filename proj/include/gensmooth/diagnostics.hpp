#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gensmooth/optimizers.hpp"
#include "gensmooth/stochastic.hpp"
#include "gensmooth/trace.hpp"

namespace gensmooth {

/// Iterations whose gradient norm reaches L0 / L1.
struct PhaseReport {
  std::vector<std::size_t> T_set;
  std::size_t T = 0;
  double threshold = 0.0;
  /// L1 = 0: the threshold is +infinity and the set is empty.
  bool degenerate = false;

  /// True when T_set = {0, ..., T-1}.
  bool is_prefix() const;
};

/// Phase set over k in [0, count). Indices at or past the last record refer
/// to the last record, which is how a trace that stopped at a stationary
/// point is extended to its budget.
PhaseReport phase_set(const IterateTrace& trace, const SmoothnessParams& p, std::size_t count);

/// Phase set over k in [0, trace.last()).
PhaseReport phase_set(const IterateTrace& trace, const SmoothnessParams& p);

struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool satisfied = true;
  bool precondition_met = true;
  /// Never counted as a failure.
  bool informational = false;
  /// rhs is +infinity or no smaller than the initial gap.
  bool vacuous = false;
  double tolerance = 0.0;
  std::string note;

  bool fails() const { return precondition_met && !informational && !satisfied; }
};

/// lhs <= rhs + atol with atol = 1e-9 max(1, |rhs|).
BoundReport make_bound(std::string name, double lhs, double rhs);

/// Iteration index at which the bounds of a deterministic trace are
/// evaluated: the budget for traces that stopped at a stationary point,
/// otherwise the last record.
std::size_t evaluation_index(const IterateTrace& trace);

/// Final-gap bound and its two-phase refinement for (L0,L1)-GD.
std::vector<BoundReport> bound_l0l1_gd(const IterateTrace& trace, const SmoothnessParams& p,
                                       double eta, double nu);

/// Linear rate of (L0,L1)-GD on a strongly convex problem (p.mu > 0).
BoundReport bound_l0l1_gd_sc(const IterateTrace& trace, const SmoothnessParams& p, double eta,
                             double nu);

/// Best-iterate bounds for GD-PS; the strongly convex rate is appended when p.mu > 0.
std::vector<BoundReport> bound_gd_ps(const IterateTrace& trace, const SmoothnessParams& p,
                                     double nu);

/// Accelerated rate of the STM trace with the MAX rule. Evaluated in log
/// space; rhs is +infinity when L1 R0 > 700.
BoundReport bound_stm(const IterateTrace& trace, const SmoothnessParams& p, double eta);

enum class AdgdVariant { G1_GAMMA_HALF, REFINED_GAMMA_QUARTER };

/// D^2 = |x1 - x*|^2 + c |x1 - x0|^2 + 2 lambda_1 theta_1 (f(x0) - f*) with
/// c = 1/2 for the half variant and 3/4 otherwise.
double adgd_D2(const IterateTrace& trace, AdgdVariant variant);

/// Bounds on f(x_hat^N) - f* for AdGD. The refined variant reports the
/// simple rate and the general one with the N - mK denominator.
std::vector<BoundReport> bound_adgd(const IterateTrace& trace, const SmoothnessParams& p,
                                    double nu, AdgdVariant variant);

/// (73 - sqrt(3281)) / 16.
double alpha_star();

/// Lyapunov value Psi_k of the strongly convex AdGD rule at record k >= 1.
double adgd_sc_lyapunov(const IterateTrace& trace, const SmoothnessParams& p, std::size_t k);

/// Aggregate contraction of Psi over the whole trace.
std::vector<BoundReport> bound_adgd_sc(const IterateTrace& trace, const SmoothnessParams& p);

/// Running-minimum criterion plus three standard errors against the rhs for
/// (L0,L1)-SGD (eta used) or SGD-PS, plus an informational report on the
/// frequency of gaps above the cap.
std::vector<BoundReport> bound_stochastic(const CriterionSummary& summary,
                                          const SmoothnessParams& p, double eta, double nu,
                                          double R0, std::size_t n, StochasticMethod method);

/// Per-step invariants of the method that produced the trace, each
/// aggregated to its worst step.
std::vector<BoundReport> check_step_invariants(const IterateTrace& trace,
                                               const std::optional<SmoothnessParams>& p,
                                               double nu, const RunConfig& config);

/// Every bound and invariant that applies to a deterministic run.
std::vector<BoundReport> evaluate_run(const IterateTrace& trace, const RunConfig& config,
                                      const std::optional<SmoothnessParams>& p, double nu);

/// CSV `name,lhs,rhs,margin,satisfied,precondition_met`.
void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports);

}  // namespace gensmooth
