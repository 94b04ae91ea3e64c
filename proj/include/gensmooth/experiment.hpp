#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gensmooth/diagnostics.hpp"
#include "gensmooth/optimizers.hpp"
#include "gensmooth/stochastic.hpp"

namespace gensmooth {

struct PowerNormProblem {
  Eigen::Index d = 1;
  int n = 2;
};
struct ExpInnerProblem {
  Vector a;
};
struct QuarticRegProblem {
  Eigen::Index d = 1;
  double mu = 0.0;
};
/// Exactly one source: inline (A, x_star), a JSON file holding the same two
/// fields, or a random instance.
struct SharedMinQuarticProblem {
  struct Random {
    Eigen::Index n = 0;
    Eigen::Index d = 0;
    std::uint64_t seed = 0;
  };
  std::optional<Matrix> A;
  std::optional<Vector> x_star;
  std::optional<std::filesystem::path> path;
  std::optional<Random> random;
};
struct LogisticProblem {
  std::filesystem::path dataset_path;
  double mu = 0.0;
};
struct ToyLogisticProblem {
  Eigen::Index d = 50;
  std::uint64_t seed = 20240923;
  std::size_t flipped_index = 0;
  double mu = 0.0;
};

using ProblemSpec = std::variant<PowerNormProblem, ExpInnerProblem, QuarticRegProblem,
                                 SharedMinQuarticProblem, LogisticProblem, ToyLogisticProblem>;

struct RunSpec {
  std::string name;   // unique within a spec; names output files
  std::string group;  // runs sharing a group share a plot-data table
  std::variant<RunConfig, StochasticRunConfig> config;

  bool stochastic() const { return config.index() == 1; }
};

enum class Emit { TRACES, BOUNDS, HESS_GRAD, PLOTDATA };

struct ExperimentSpec {
  ProblemSpec problem;
  std::vector<RunSpec> runs;
  std::filesystem::path outputs;
  std::set<Emit> emit{Emit::TRACES, Emit::BOUNDS};
  /// Trace and plot-data rows are written for k divisible by `stride` and
  /// for the last record.
  std::size_t stride = 1;
  /// Relative paths inside the spec resolve against this directory.
  std::filesystem::path base_dir;
};

/// Parses and validates a spec document. Throws ConfigError whose message
/// starts with the JSON pointer of the offending field, or with the line and
/// column of a syntax error.
ExperimentSpec load_spec(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentSpec load_spec_file(const std::filesystem::path& path);

/// Inverse of load_spec for specs without inline matrices larger than the
/// shared-minimum instance.
std::string dump_spec(const ExperimentSpec& spec);

OraclePtr build_problem(const ProblemSpec& problem, const std::filesystem::path& base_dir);

/// The six-method comparison on f(x) = x^4 from the starting point x0.
ExperimentSpec figure1_spec(double x0, const std::filesystem::path& outputs,
                            std::set<Emit> emit);

/// Budgets used by figure1_spec: 1e5 below |x0| = 100, 1e6 from there on.
std::size_t figure1_budget(double x0);

struct RunResult {
  std::string name;
  std::string group;
  std::string method;
  std::size_t records = 0;
  double final_gap = 0.0;  // f(last) - f*, NaN without f*
  bool stationary_stop = false;
  std::vector<BoundReport> reports;
  std::vector<std::string> warnings;
  /// Fitted L0 + L1 |grad| envelope when Hessian samples were emitted.
  std::optional<SmoothnessParams> envelope;
  std::string error;  // set when the run aborted
};

struct FileCheck {
  std::filesystem::path path;
  bool recorded = false;  // the file did not exist and was written
  bool matches = true;
};

enum class ExecMode {
  RUN,     // write every selected output
  VERIFY,  // evaluate diagnostics; compare existing outputs, write missing ones
};

struct ExperimentResult {
  std::vector<RunResult> runs;
  std::vector<FileCheck> files;

  /// A run aborted, a precondition-met report failed, or an output differs
  /// from its replay.
  bool failed() const;
};

/// Executes the runs one at a time in spec order. Diagnostics are evaluated
/// when bounds are emitted or in VERIFY mode.
ExperimentResult execute(const ExperimentSpec& spec, ExecMode mode);

/// Whitespace table `# k <names...>` followed by one row per iteration
/// index with f(x^k) - f* per column, `nan` past the end of a column.
void emit_plotdata(std::ostream& out, const std::vector<std::string>& names,
                   const std::vector<std::vector<double>>& gaps, std::size_t stride = 1);

/// Convenience overload on traces, labelled by method name.
void emit_plotdata(const std::vector<IterateTrace>& traces, const std::filesystem::path& path);

}  // namespace gensmooth
