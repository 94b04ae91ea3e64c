#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gensmooth/types.hpp"

namespace gensmooth {

/// Per-iteration history of a run, stored column-wise.
///
/// Record k holds the iterate x^k, f(x^k), |grad f(x^k)|, the step taken
/// from x^k, the distance to x* (NaN when no optimum is known) and a fixed
/// set of method-specific state values named by `state_names`.
class IterateTrace {
 public:
  IterateTrace() = default;
  IterateTrace(std::string method, Eigen::Index dim, std::vector<std::string> state_names);

  void append(const Vector& x, double f, double grad_norm, double step, double dist,
              const std::vector<double>& state);

  std::size_t size() const { return f_.size(); }
  bool empty() const { return f_.empty(); }
  /// Index of the last record, i.e. the number of completed steps.
  std::size_t last() const { return size() - 1; }

  const std::string& method() const { return method_; }
  Eigen::Index dim() const { return dim_; }
  const std::vector<std::string>& state_names() const { return state_names_; }

  Eigen::Map<const Vector> x(std::size_t k) const;
  double f(std::size_t k) const { return f_[k]; }
  double grad_norm(std::size_t k) const { return grad_norm_[k]; }
  double step(std::size_t k) const { return step_[k]; }
  double dist_to_opt(std::size_t k) const { return dist_[k]; }
  /// NaN when the trace has no state value with that name.
  double state(std::size_t k, std::string_view name) const;
  bool has_state(std::string_view name) const;

  const std::vector<double>& f_values() const { return f_; }

  /// Mutable access to every stored number, used to build corrupted copies
  /// in integrity tests.
  double* mutable_value(std::size_t k, std::string_view column, Eigen::Index component = 0);

  std::optional<double> f_star;
  bool converged = false;
  /// Iteration budget the run was configured with.
  std::size_t budget = 0;
  /// Set when the run stopped at a point the method can never leave (zero
  /// gradient, or a Polyak step at f = f*). Later iterates would repeat it.
  bool stationary_stop = false;
  std::vector<std::string> warnings;
  /// Run-level scalars that are not per-iteration (e.g. AdGD averages).
  std::map<std::string, double> summary;
  /// The weighted-average point of AdGD runs.
  std::optional<Vector> averaged_point;

  bool operator==(const IterateTrace&) const;

 private:
  std::string method_;
  Eigen::Index dim_ = 0;
  std::vector<std::string> state_names_;
  std::vector<double> xs_;
  std::vector<double> f_, grad_norm_, step_, dist_;
  std::vector<double> state_;
};

/// CSV with columns k,f,grad_norm,step,dist_to_opt followed by `extra`
/// state columns. Numbers use shortest round-trip decimals. With a stride
/// above one only rows with k divisible by it, and the last row, are written.
void write_trace_csv(std::ostream& out, const IterateTrace& trace,
                     const std::vector<std::string>& extra, std::size_t stride = 1);

}  // namespace gensmooth
