#include "gensmooth/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gensmooth/experiment.hpp"
#include "gensmooth/format.hpp"
#include "gensmooth/scalar_core.hpp"

namespace gensmooth {
namespace {

namespace fs = std::filesystem;

struct Job {
  fs::path file;
  ExperimentSpec spec;
};

std::vector<fs::path> spec_files(const fs::path& target) {
  std::vector<fs::path> files;
  if (fs::is_directory(target)) {
    for (const auto& entry : fs::directory_iterator(target))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError(target.string() + ": no .json specs");
  } else {
    files.push_back(target);
  }
  return files;
}

/// Loads every spec and applies the output override: a single spec writes
/// into the override itself, a directory of specs into one subdirectory per
/// spec file.
std::vector<Job> load_jobs(const fs::path& target, const std::string& outputs) {
  const auto files = spec_files(target);
  std::vector<Job> jobs;
  for (const auto& f : files) {
    Job job{f, {}};
    try {
      job.spec = load_spec_file(f);
    } catch (const ConfigError& e) {
      throw ConfigError(f.string() + ": " + e.what());
    }
    if (!outputs.empty())
      job.spec.outputs = fs::absolute(files.size() == 1 && !fs::is_directory(target)
                                          ? fs::path(outputs)
                                          : fs::path(outputs) / f.stem());
    jobs.push_back(std::move(job));
  }
  return jobs;
}

ExperimentResult execute_job(const Job& job, ExecMode mode) {
  try {
    return execute(job.spec, mode);
  } catch (const ConfigError& e) {
    throw ConfigError(job.file.string() + ": " + e.what());
  }
}

const char* status_of(const BoundReport& r) {
  if (r.informational) return "INFO";
  if (!r.precondition_met) return "FLAG";
  return r.satisfied ? "PASS" : "FAIL";
}

struct Tally {
  std::size_t pass = 0, fail = 0, flagged = 0, info = 0, aborted = 0;
  std::size_t matched = 0, recorded = 0, differ = 0;
};

void print_result(std::ostream& out, const std::string& label, const ExperimentResult& res,
                  bool verbose, Tally& t) {
  for (const auto& r : res.runs) {
    out << label << " " << r.name << " [" << r.method << "] records=" << r.records
        << " final_gap=" << format_double(r.final_gap) << (r.stationary_stop ? " (stationary)" : "")
        << '\n';
    if (!r.error.empty()) {
      out << "  ERROR " << r.error << '\n';
      ++t.aborted;
    }
    for (const auto& w : r.warnings) out << "  WARN " << w << '\n';
    for (const auto& b : r.reports) {
      const std::string st = status_of(b);
      if (st == "PASS") ++t.pass;
      if (st == "FAIL") ++t.fail;
      if (st == "FLAG") ++t.flagged;
      if (st == "INFO") ++t.info;
      if (!verbose && st == "PASS") continue;
      out << "  " << st << ' ' << b.name << " lhs=" << format_double(b.lhs)
          << " rhs=" << format_double(b.rhs) << (b.vacuous ? " vacuous" : "");
      if (!b.note.empty()) out << " (" << b.note << ')';
      out << '\n';
    }
  }
  for (const auto& f : res.files) {
    if (!f.matches) {
      ++t.differ;
      out << "  REPLAY MISMATCH " << f.path.string() << '\n';
    } else if (f.recorded) {
      ++t.recorded;
    } else {
      ++t.matched;
    }
  }
}

int cmd_run(const std::string& target, const std::string& outputs, std::ostream& out) {
  bool failed = false;
  for (const auto& job : load_jobs(target, outputs)) {
    const ExperimentResult res = execute_job(job, ExecMode::RUN);
    Tally t;
    print_result(out, job.file.stem().string(), res, false, t);
    for (const auto& r : res.runs) failed = failed || !r.error.empty();
  }
  return failed ? 1 : 0;
}

int cmd_verify(const std::string& target, const std::string& outputs, bool verbose,
               std::ostream& out) {
  Tally t;
  bool failed = false;
  for (const auto& job : load_jobs(target, outputs)) {
    const ExperimentResult res = execute_job(job, ExecMode::VERIFY);
    print_result(out, job.file.stem().string(), res, verbose, t);
    failed = failed || res.failed();
  }
  out << "verify: " << t.pass << " passed, " << t.fail << " failed, " << t.flagged
      << " precondition unmet, " << t.info << " informational, " << t.aborted << " aborted; "
      << t.matched << " outputs replayed, " << t.recorded << " recorded, " << t.differ
      << " differ\n";
  out << (failed ? "verify: FAILED\n" : "verify: OK\n");
  return failed ? 1 : 0;
}

int cmd_figure1(const std::string& outdir, const std::vector<double>& starts, std::ostream& out) {
  bool failed = false;
  for (double x0 : starts) {
    const std::string label = "x0_" + format_double(x0);
    const ExperimentSpec spec =
        figure1_spec(x0, fs::path(outdir) / label, {Emit::TRACES, Emit::PLOTDATA});
    const ExperimentResult res = execute(spec, ExecMode::RUN);
    Tally t;
    print_result(out, label, res, false, t);
    for (const auto& r : res.runs) failed = failed || !r.error.empty();
  }
  return failed ? 1 : 0;
}

int cmd_smoothness(const std::string& target, const std::string& outputs, std::ostream& out) {
  bool failed = false;
  for (auto job : load_jobs(target, outputs)) {
    job.spec.emit = {Emit::HESS_GRAD};
    const ExperimentResult res = execute_job(job, ExecMode::RUN);
    for (const auto& r : res.runs) {
      out << job.file.stem().string() << ' ' << r.name;
      if (!r.error.empty()) {
        out << " ERROR " << r.error << '\n';
        failed = true;
      } else if (r.envelope) {
        out << " L0=" << format_double(r.envelope->L0) << " L1=" << format_double(r.envelope->L1)
            << '\n';
      } else {
        out << " no envelope (fewer than two samples)\n";
      }
    }
  }
  return failed ? 1 : 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized-smoothness optimizer benchmark", "gensmooth"};
  app.require_subcommand(1);

  std::string target;
  std::string outputs;
  bool verbose = false;

  auto* run_cmd = app.add_subcommand("run", "Execute every run of a spec and write its outputs");
  run_cmd->add_option("spec", target, "Spec file or directory of specs")->required();
  run_cmd->add_option("--outputs", outputs, "Override the output directory");

  auto* verify_cmd = app.add_subcommand(
      "verify", "Run the diagnostics and replay-check existing outputs; exit 1 on failure");
  verify_cmd->add_option("spec", target, "Spec file or directory of specs")->required();
  verify_cmd->add_option("--outputs", outputs, "Override the output directory");
  verify_cmd->add_flag("-v,--verbose", verbose, "Also list passing reports");

  std::string fig_dir = "figure1";
  std::vector<double> starts{1.0, 10.0, 100.0};
  auto* fig_cmd = app.add_subcommand("figure1", "Six methods on f(x) = x^4 from three starts");
  fig_cmd->add_option("outdir", fig_dir, "Output directory")->capture_default_str();
  fig_cmd->add_option("--x0", starts, "Starting points")->capture_default_str();

  auto* smooth_cmd =
      app.add_subcommand("smoothness", "Hessian-vs-gradient samples along every run");
  smooth_cmd->add_option("spec", target, "Spec file or directory of specs")->required();
  smooth_cmd->add_option("--outputs", outputs, "Override the output directory");

  auto* nu_cmd = app.add_subcommand("nu", "Print the root of t exp(t) = 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*nu_cmd) {
      out << format_double(nu()) << '\n';
      return 0;
    }
    if (*run_cmd) return cmd_run(target, outputs, out);
    if (*verify_cmd) return cmd_verify(target, outputs, verbose, out);
    if (*fig_cmd) return cmd_figure1(fig_dir, starts, out);
    if (*smooth_cmd) return cmd_smoothness(target, outputs, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace gensmooth
