#include "gensmooth/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gensmooth/format.hpp"
#include "gensmooth/problems.hpp"
#include "gensmooth/scalar_core.hpp"
#include "gensmooth/smoothness_verifier.hpp"

namespace gensmooth {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string escape_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

std::string child(const std::string& ptr, std::string_view key) {
  return ptr + "/" + escape_token(key);
}

std::string child(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) {
  throw ConfigError((ptr.empty() ? std::string("/") : ptr) + ": " + msg);
}

void expect_object(const json& j, const std::string& ptr,
                   std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(ptr, "expected an object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      fail(child(ptr, item.key()), "unknown field \"" + item.key() + "\"");
  }
}

const json* find(const json& obj, std::string_view key) {
  const auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& ptr, std::string_view key) {
  const json* v = find(obj, key);
  if (!v) fail(child(ptr, key), "required field is missing");
  return *v;
}

double as_double(const json& j, const std::string& ptr) {
  if (!j.is_number()) fail(ptr, "expected a number");
  return j.get<double>();
}

std::uint64_t as_uint(const json& j, const std::string& ptr) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0) fail(ptr, "expected a nonnegative integer");
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0.0 && v <= 9007199254740992.0 && std::floor(v) == v)
      return static_cast<std::uint64_t>(v);
  }
  fail(ptr, "expected a nonnegative integer");
}

std::string as_string(const json& j, const std::string& ptr) {
  if (!j.is_string()) fail(ptr, "expected a string");
  return j.get<std::string>();
}

Vector as_vector(const json& j, const std::string& ptr) {
  if (!j.is_array()) fail(ptr, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = as_double(j[i], child(ptr, i));
  return v;
}

Matrix as_matrix(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) fail(ptr, "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = as_vector(j[r], child(ptr, r));
    if (static_cast<std::size_t>(row.size()) != cols) fail(child(ptr, r), "ragged matrix row");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

Eigen::Index as_dim(const json& j, const std::string& ptr) {
  const std::uint64_t d = as_uint(j, ptr);
  if (d == 0) fail(ptr, "dimension must be positive");
  return static_cast<Eigen::Index>(d);
}

SharedMinQuarticProblem::Random parse_random_instance(const json& j, const std::string& ptr) {
  expect_object(j, ptr, {"n", "d", "seed"});
  SharedMinQuarticProblem::Random r;
  r.n = as_dim(require(j, ptr, "n"), child(ptr, "n"));
  r.d = as_dim(require(j, ptr, "d"), child(ptr, "d"));
  r.seed = as_uint(require(j, ptr, "seed"), child(ptr, "seed"));
  return r;
}

ProblemSpec parse_problem(const json& j, const std::string& ptr) {
  if (!j.is_object() || j.size() != 1) fail(ptr, "expected an object with exactly one problem kind");
  const std::string kind = j.begin().key();
  const json& b = j.begin().value();
  const std::string p = child(ptr, kind);

  if (kind == "power_norm") {
    expect_object(b, p, {"d", "n"});
    PowerNormProblem out;
    out.d = as_dim(require(b, p, "d"), child(p, "d"));
    const std::uint64_t n = as_uint(require(b, p, "n"), child(p, "n"));
    if (n < 1 || n > 64) fail(child(p, "n"), "n must be in [1, 64]");
    out.n = static_cast<int>(n);
    return out;
  }
  if (kind == "exp_inner") {
    expect_object(b, p, {"a"});
    ExpInnerProblem out;
    out.a = as_vector(require(b, p, "a"), child(p, "a"));
    if (out.a.size() == 0) fail(child(p, "a"), "expected a nonempty vector");
    return out;
  }
  if (kind == "quartic_reg") {
    expect_object(b, p, {"d", "mu"});
    QuarticRegProblem out;
    out.d = as_dim(require(b, p, "d"), child(p, "d"));
    out.mu = as_double(require(b, p, "mu"), child(p, "mu"));
    if (!(out.mu > 0.0)) fail(child(p, "mu"), "mu must be positive");
    return out;
  }
  if (kind == "shared_min_quartic") {
    expect_object(b, p, {"A", "x_star", "path", "random"});
    SharedMinQuarticProblem out;
    if (const json* v = find(b, "A")) out.A = as_matrix(*v, child(p, "A"));
    if (const json* v = find(b, "x_star")) out.x_star = as_vector(*v, child(p, "x_star"));
    if (const json* v = find(b, "path")) out.path = as_string(*v, child(p, "path"));
    if (const json* v = find(b, "random")) out.random = parse_random_instance(*v, child(p, "random"));
    const int sources = (out.A || out.x_star ? 1 : 0) + (out.path ? 1 : 0) + (out.random ? 1 : 0);
    if (sources != 1) fail(p, "give exactly one of {A, x_star}, path or random");
    if (out.A.has_value() != out.x_star.has_value()) fail(p, "A and x_star go together");
    if (out.A && out.A->cols() != out.x_star->size())
      fail(child(p, "x_star"), "length does not match the columns of A");
    return out;
  }
  if (kind == "logistic") {
    expect_object(b, p, {"dataset_path", "mu"});
    LogisticProblem out;
    out.dataset_path = as_string(require(b, p, "dataset_path"), child(p, "dataset_path"));
    if (const json* v = find(b, "mu")) out.mu = as_double(*v, child(p, "mu"));
    if (!(out.mu >= 0.0)) fail(child(p, "mu"), "mu must be nonnegative");
    return out;
  }
  if (kind == "toy_logistic") {
    expect_object(b, p, {"d", "seed", "flipped_index", "mu"});
    ToyLogisticProblem out;
    if (const json* v = find(b, "d")) out.d = as_dim(*v, child(p, "d"));
    if (const json* v = find(b, "seed")) out.seed = as_uint(*v, child(p, "seed"));
    if (const json* v = find(b, "flipped_index")) out.flipped_index = as_uint(*v, child(p, "flipped_index"));
    if (const json* v = find(b, "mu")) out.mu = as_double(*v, child(p, "mu"));
    if (out.flipped_index >= static_cast<std::size_t>(out.d))
      fail(child(p, "flipped_index"), "must be below d");
    if (!(out.mu >= 0.0)) fail(child(p, "mu"), "mu must be nonnegative");
    return out;
  }
  fail(p, "unknown problem kind \"" + kind + "\"");
}

SmoothnessParams parse_params(const json& j, const std::string& ptr) {
  expect_object(j, ptr, {"L0", "L1", "mu", "L"});
  SmoothnessParams p;
  p.L0 = as_double(require(j, ptr, "L0"), child(ptr, "L0"));
  p.L1 = as_double(require(j, ptr, "L1"), child(ptr, "L1"));
  if (const json* v = find(j, "mu")) p.mu = as_double(*v, child(ptr, "mu"));
  if (const json* v = find(j, "L")) p.L_classical = as_double(*v, child(ptr, "L"));
  try {
    p.validate();
  } catch (const ConfigError& e) {
    fail(ptr, e.what());
  }
  return p;
}

bool uses_eta(Method m) {
  return m == Method::GD || m == Method::L0L1GD || m == Method::STM || m == Method::STM_MAX;
}

void reject_unused(const json& j, const std::string& ptr, std::string_view method,
                   std::initializer_list<std::string_view> keys) {
  for (auto key : keys)
    if (find(j, key))
      fail(child(ptr, key), "field \"" + std::string(key) + "\" is not used by " +
                                std::string(method));
}

/// Points a validation message at the field it names, e.g. "eta must be ...".
[[noreturn]] void fail_validation(const std::string& ptr, const ConfigError& e) {
  const std::string msg = e.what();
  const std::string field = msg.substr(0, msg.find(' '));
  for (std::string_view key : {"eta", "gamma", "lambda0", "x0", "grad_tol", "replicate_count"})
    if (field == key) fail(child(ptr, key), msg);
  fail(ptr, msg);
}

RunSpec parse_run(const json& j, const std::string& ptr) {
  expect_object(j, ptr,
                {"method", "name", "group", "eta", "gamma", "lambda0", "N", "x0", "grad_tol",
                 "seed", "replicate_count", "params"});
  const std::string method = as_string(require(j, ptr, "method"), child(ptr, "method"));
  RunSpec out;
  out.name = method;
  if (const json* v = find(j, "name")) out.name = as_string(*v, child(ptr, "name"));
  if (const json* v = find(j, "group")) out.group = as_string(*v, child(ptr, "group"));
  if (out.name.empty() || out.name.find_first_of("/\\") != std::string::npos ||
      out.name.front() == '.')
    fail(child(ptr, "name"), "not usable as a file name");

  const std::size_t N = as_uint(require(j, ptr, "N"), child(ptr, "N"));
  const Vector x0 = as_vector(require(j, ptr, "x0"), child(ptr, "x0"));
  std::optional<SmoothnessParams> params;
  if (const json* v = find(j, "params")) params = parse_params(*v, child(ptr, "params"));

  if (auto sm = parse_stochastic_method(method)) {
    reject_unused(j, ptr, method, {"gamma", "lambda0", "grad_tol"});
    StochasticRunConfig c;
    c.method = *sm;
    c.N = N;
    c.x0 = x0;
    c.params = params;
    if (*sm == StochasticMethod::L0L1SGD)
      c.eta = as_double(require(j, ptr, "eta"), child(ptr, "eta"));
    else
      reject_unused(j, ptr, method, {"eta"});
    if (const json* v = find(j, "seed")) c.seed = as_uint(*v, child(ptr, "seed"));
    if (const json* v = find(j, "replicate_count"))
      c.replicate_count = as_uint(*v, child(ptr, "replicate_count"));
    try {
      c.validate();
    } catch (const ConfigError& e) {
      fail_validation(ptr, e);
    }
    out.config = std::move(c);
    return out;
  }

  const auto m = parse_method(method);
  if (!m) fail(child(ptr, "method"), "unknown method \"" + method + "\"");
  reject_unused(j, ptr, method, {"seed", "replicate_count"});
  RunConfig c;
  c.method = *m;
  c.N = N;
  c.x0 = x0;
  c.params = params;
  if (uses_eta(*m))
    c.eta = as_double(require(j, ptr, "eta"), child(ptr, "eta"));
  else
    reject_unused(j, ptr, method, {"eta"});
  if (*m == Method::ADGD) {
    if (const json* v = find(j, "gamma")) c.gamma = as_double(*v, child(ptr, "gamma"));
  } else {
    reject_unused(j, ptr, method, {"gamma"});
  }
  if (*m == Method::ADGD || *m == Method::ADGD_SC) {
    if (const json* v = find(j, "lambda0")) c.lambda0 = as_double(*v, child(ptr, "lambda0"));
  } else {
    reject_unused(j, ptr, method, {"lambda0"});
  }
  if (const json* v = find(j, "grad_tol")) c.grad_tol = as_double(*v, child(ptr, "grad_tol"));
  try {
    c.validate();
  } catch (const ConfigError& e) {
    fail_validation(ptr, e);
  }
  out.config = std::move(c);
  return out;
}

const std::map<std::string, Emit>& emit_names() {
  static const std::map<std::string, Emit> names{{"traces", Emit::TRACES},
                                                 {"bounds", Emit::BOUNDS},
                                                 {"hess_grad", Emit::HESS_GRAD},
                                                 {"plotdata", Emit::PLOTDATA}};
  return names;
}

std::string emit_name(Emit e) {
  for (const auto& [name, value] : emit_names())
    if (value == e) return name;
  return {};
}

fs::path resolve(const fs::path& base, const fs::path& p) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_json_prefix(std::string msg) {
  // "[json.exception.parse_error.101] parse error at line 2, column 3: ..."
  if (!msg.empty() && msg.front() == '[') {
    const auto close = msg.find("] ");
    if (close != std::string::npos) msg.erase(0, close + 2);
  }
  return msg;
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json problem_json(const ProblemSpec& problem) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerNormProblem>) {
          return {{"power_norm", {{"d", p.d}, {"n", p.n}}}};
        } else if constexpr (std::is_same_v<T, ExpInnerProblem>) {
          return {{"exp_inner", {{"a", vector_json(p.a)}}}};
        } else if constexpr (std::is_same_v<T, QuarticRegProblem>) {
          return {{"quartic_reg", {{"d", p.d}, {"mu", p.mu}}}};
        } else if constexpr (std::is_same_v<T, SharedMinQuarticProblem>) {
          json b = json::object();
          if (p.A) {
            json rows = json::array();
            for (Eigen::Index r = 0; r < p.A->rows(); ++r)
              rows.push_back(vector_json(p.A->row(r).transpose()));
            b["A"] = rows;
            b["x_star"] = vector_json(*p.x_star);
          }
          if (p.path) b["path"] = p.path->generic_string();
          if (p.random) b["random"] = {{"n", p.random->n}, {"d", p.random->d}, {"seed", p.random->seed}};
          return {{"shared_min_quartic", b}};
        } else if constexpr (std::is_same_v<T, LogisticProblem>) {
          return {{"logistic", {{"dataset_path", p.dataset_path.generic_string()}, {"mu", p.mu}}}};
        } else {
          return {{"toy_logistic",
                   {{"d", p.d}, {"seed", p.seed}, {"flipped_index", p.flipped_index}, {"mu", p.mu}}}};
        }
      },
      problem);
}

json params_json(const SmoothnessParams& p) {
  json j{{"L0", p.L0}, {"L1", p.L1}, {"mu", p.mu}};
  if (p.L_classical) j["L"] = *p.L_classical;
  return j;
}

json run_json(const RunSpec& run) {
  json j;
  if (const auto* c = std::get_if<RunConfig>(&run.config)) {
    j["method"] = std::string(method_name(c->method));
    if (run.name != j["method"]) j["name"] = run.name;
    if (!run.group.empty()) j["group"] = run.group;
    if (uses_eta(c->method)) j["eta"] = c->eta;
    if (c->method == Method::ADGD) j["gamma"] = c->gamma;
    if (c->method == Method::ADGD || c->method == Method::ADGD_SC) j["lambda0"] = c->lambda0;
    j["N"] = c->N;
    j["x0"] = vector_json(c->x0);
    if (c->grad_tol != 0.0) j["grad_tol"] = c->grad_tol;
    if (c->params) j["params"] = params_json(*c->params);
  } else {
    const auto& s = std::get<StochasticRunConfig>(run.config);
    j["method"] = std::string(stochastic_method_name(s.method));
    if (run.name != j["method"]) j["name"] = run.name;
    if (!run.group.empty()) j["group"] = run.group;
    if (s.method == StochasticMethod::L0L1SGD) j["eta"] = s.eta;
    j["N"] = s.N;
    j["x0"] = vector_json(s.x0);
    j["seed"] = s.seed;
    j["replicate_count"] = s.replicate_count;
    if (s.params) j["params"] = params_json(*s.params);
  }
  return j;
}

SharedMinInstance load_shared_min_file(const fs::path& path, const std::string& ptr) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    fail(ptr, path.string() + ": " + strip_json_prefix(e.what()));
  }
  const std::string fp = ptr + "#";
  expect_object(j, fp, {"A", "x_star"});
  SharedMinInstance inst;
  inst.A = as_matrix(require(j, fp, "A"), child(fp, "A"));
  inst.x_star = as_vector(require(j, fp, "x_star"), child(fp, "x_star"));
  if (inst.A.cols() != inst.x_star.size()) fail(fp, "x_star does not match the columns of A");
  return inst;
}

/// Writes or replays one output file.
class OutputSink {
 public:
  OutputSink(fs::path dir, ExecMode mode, std::vector<FileCheck>& checks)
      : dir_(std::move(dir)), mode_(mode), checks_(checks) {}

  void put(const std::string& file, const std::string& content) {
    FileCheck check;
    check.path = dir_ / file;
    if (mode_ == ExecMode::VERIFY && fs::exists(check.path)) {
      check.matches = read_file(check.path) == content;
    } else {
      std::ofstream out(check.path, std::ios::binary | std::ios::trunc);
      out << content;
      out.close();
      if (!out) throw ConfigError("cannot write " + check.path.string());
      check.recorded = mode_ == ExecMode::VERIFY;
    }
    checks_.push_back(std::move(check));
  }

 private:
  fs::path dir_;
  ExecMode mode_;
  std::vector<FileCheck>& checks_;
};

std::vector<Vector> sample_points(const IterateTrace& trace, std::size_t max_points) {
  std::vector<Vector> pts;
  const std::size_t n = trace.size();
  if (n == 0) return pts;
  const std::size_t count = std::min(n, max_points);
  std::size_t prev = n;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = count == 1 ? 0 : i * (n - 1) / (count - 1);
    if (k == prev) continue;
    pts.emplace_back(trace.x(k));
    prev = k;
  }
  return pts;
}

std::string hess_grad_outputs(const ObjectiveOracle& oracle, const IterateTrace& trace,
                              RunResult& rr) {
  const HessGradSampling s = sample_hess_vs_grad(oracle, sample_points(trace, 200));
  for (const auto& w : s.warnings) rr.warnings.push_back(w);
  if (s.samples.size() >= 2) {
    try {
      rr.envelope = fit_L0_L1(s.samples);
    } catch (const Error& e) {
      rr.warnings.push_back(std::string("envelope fit: ") + e.what());
    }
  }
  std::ostringstream out;
  write_hess_grad_csv(out, s.samples);
  return out.str();
}

std::string reports_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  write_reports_csv(out, reports);
  return out.str();
}

std::vector<double> gaps_of(const IterateTrace& t) {
  std::vector<double> g(t.size());
  const double fs = t.f_star ? *t.f_star : kNaN;
  for (std::size_t k = 0; k < t.size(); ++k) g[k] = t.f(k) - fs;
  return g;
}

void check_dimensions(const ExperimentSpec& spec, const ObjectiveOracle& oracle) {
  for (std::size_t i = 0; i < spec.runs.size(); ++i) {
    const Vector& x0 = std::visit([](const auto& c) -> const Vector& { return c.x0; },
                                  spec.runs[i].config);
    if (x0.size() != oracle.dimension())
      fail(child(child("/runs", i), "x0"),
           "length " + std::to_string(x0.size()) + " does not match the problem dimension " +
               std::to_string(oracle.dimension()));
  }
}

}  // namespace

ExperimentSpec load_spec(std::string_view text, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(strip_json_prefix(e.what()));
  }
  expect_object(j, "", {"problem", "runs", "outputs", "emit", "stride"});
  ExperimentSpec spec;
  spec.base_dir = base_dir;
  spec.problem = parse_problem(require(j, "", "problem"), "/problem");

  const json& runs = require(j, "", "runs");
  if (!runs.is_array() || runs.empty()) fail("/runs", "expected a nonempty array of runs");
  for (std::size_t i = 0; i < runs.size(); ++i) {
    spec.runs.push_back(parse_run(runs[i], child("/runs", i)));
    for (std::size_t k = 0; k < i; ++k)
      if (spec.runs[k].name == spec.runs[i].name)
        fail(child(child("/runs", i), "name"), "duplicate run name \"" + spec.runs[i].name + "\"");
  }

  spec.outputs = as_string(require(j, "", "outputs"), "/outputs");
  if (spec.outputs.empty()) fail("/outputs", "empty path");

  if (const json* e = find(j, "emit")) {
    if (!e->is_array()) fail("/emit", "expected an array of strings");
    spec.emit.clear();
    for (std::size_t i = 0; i < e->size(); ++i) {
      const std::string name = as_string((*e)[i], child("/emit", i));
      const auto it = emit_names().find(name);
      if (it == emit_names().end()) fail(child("/emit", i), "unknown output \"" + name + "\"");
      spec.emit.insert(it->second);
    }
  }
  if (const json* s = find(j, "stride")) {
    spec.stride = as_uint(*s, "/stride");
    if (spec.stride == 0) fail("/stride", "must be positive");
  }
  return spec;
}

ExperimentSpec load_spec_file(const fs::path& path) {
  return load_spec(read_file(path), path.parent_path());
}

std::string dump_spec(const ExperimentSpec& spec) {
  json j;
  j["problem"] = problem_json(spec.problem);
  j["runs"] = json::array();
  for (const auto& r : spec.runs) j["runs"].push_back(run_json(r));
  j["outputs"] = spec.outputs.generic_string();
  j["emit"] = json::array();
  for (Emit e : spec.emit) j["emit"].push_back(emit_name(e));
  if (spec.stride != 1) j["stride"] = spec.stride;
  return j.dump(2) + "\n";
}

OraclePtr build_problem(const ProblemSpec& problem, const fs::path& base_dir) {
  return std::visit(
      [&](const auto& p) -> OraclePtr {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerNormProblem>) {
          return make_power_norm(p.d, p.n);
        } else if constexpr (std::is_same_v<T, ExpInnerProblem>) {
          return make_exp_inner(p.a);
        } else if constexpr (std::is_same_v<T, QuarticRegProblem>) {
          return make_quartic_regularized(p.d, p.mu);
        } else if constexpr (std::is_same_v<T, SharedMinQuarticProblem>) {
          const std::string ptr = "/problem/shared_min_quartic";
          if (p.A) return make_shared_min_quartic(*p.A, *p.x_star);
          if (p.random) {
            const auto inst = random_shared_min_instance(p.random->n, p.random->d, p.random->seed);
            return make_shared_min_quartic(inst.A, inst.x_star);
          }
          const auto inst = load_shared_min_file(resolve(base_dir, *p.path), child(ptr, "path"));
          return make_shared_min_quartic(inst.A, inst.x_star);
        } else if constexpr (std::is_same_v<T, LogisticProblem>) {
          const fs::path path = resolve(base_dir, p.dataset_path);
          try {
            return make_logistic(load_libsvm(path), p.mu);
          } catch (const ParseError& e) {
            fail("/problem/logistic/dataset_path", path.string() + ": " + e.what());
          }
        } else {
          return make_logistic(make_toy_logistic_dataset(p.d, p.seed, p.flipped_index), p.mu);
        }
      },
      problem);
}

std::size_t figure1_budget(double x0) { return std::abs(x0) >= 100.0 ? 1000000 : 100000; }

ExperimentSpec figure1_spec(double x0, const fs::path& outputs, std::set<Emit> emit) {
  ExperimentSpec spec;
  spec.problem = PowerNormProblem{1, 2};
  spec.outputs = outputs;
  spec.emit = std::move(emit);
  const std::size_t N = figure1_budget(x0);
  spec.stride = N >= 1000000 ? 100 : 1;
  const Vector start = Vector::Constant(1, x0);
  auto add = [&](Method m, double eta) {
    RunConfig c;
    c.method = m;
    c.eta = eta;
    c.N = N;
    c.x0 = start;
    spec.runs.push_back(RunSpec{std::string(method_name(m)), "", c});
  };
  add(Method::GD, 1.0 / (12.0 * x0 * x0));
  add(Method::L0L1GD, nu() / 2.0);
  add(Method::STM, nu() / 2.0);
  add(Method::STM_MAX, nu() / 2.0);
  add(Method::GDPS, 0.0);
  add(Method::ADGD, 0.0);
  return spec;
}

bool ExperimentResult::failed() const {
  for (const auto& r : runs) {
    if (!r.error.empty()) return true;
    for (const auto& b : r.reports)
      if (b.fails()) return true;
  }
  for (const auto& f : files)
    if (!f.matches) return true;
  return false;
}

ExperimentResult execute(const ExperimentSpec& spec, ExecMode mode) {
  if (spec.runs.empty()) fail("/runs", "at least one run is required");
  const OraclePtr oracle = build_problem(spec.problem, spec.base_dir);
  check_dimensions(spec, *oracle);

  const fs::path outdir = resolve(spec.base_dir, spec.outputs);
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec || !fs::is_directory(outdir)) fail("/outputs", "cannot create " + outdir.string());

  ExperimentResult result;
  OutputSink sink(outdir, mode, result.files);
  const bool evaluate = mode == ExecMode::VERIFY || spec.emit.count(Emit::BOUNDS) > 0;

  std::vector<std::string> groups;
  std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::vector<double>>>> plots;

  for (const RunSpec& rs : spec.runs) {
    RunResult rr;
    rr.name = rs.name;
    rr.group = rs.group;
    try {
      IterateTrace trace;
      std::vector<std::string> columns;
      std::optional<CriterionSummary> criterion;
      if (const auto* c = std::get_if<RunConfig>(&rs.config)) {
        rr.method = std::string(method_name(c->method));
        trace = run(*oracle, *c);
        columns = trace_csv_columns(c->method);
        if (evaluate) {
          const auto p = c->params ? c->params : oracle->smoothness();
          rr.reports = evaluate_run(trace, *c, p, nu());
        }
      } else {
        const auto& s = std::get<StochasticRunConfig>(rs.config);
        rr.method = std::string(stochastic_method_name(s.method));
        trace = run_stochastic(*oracle, s);
        columns = {"index"};
        const auto p = s.params ? s.params : oracle->component_smoothness();
        if (!p) {
          rr.warnings.push_back("no per-component constants: expected criterion skipped");
        } else if (!oracle->optimum()) {
          rr.warnings.push_back("no optimum: expected criterion skipped");
        } else if (s.replicate_count < 2) {
          rr.warnings.push_back("replicate_count < 2: expected criterion skipped");
        } else {
          criterion = expected_min_criterion(*oracle, s, *p, nu());
          if (evaluate) {
            const double R0 = (s.x0 - oracle->optimum()->x).stableNorm();
            rr.reports = bound_stochastic(*criterion, *p, s.eta, nu(), R0,
                                          oracle->component_count(), s.method);
          }
        }
      }
      rr.records = trace.size();
      rr.final_gap = trace.f_star ? trace.f(trace.last()) - *trace.f_star : kNaN;
      rr.stationary_stop = trace.stationary_stop;
      for (const auto& w : trace.warnings) rr.warnings.push_back(w);

      if (spec.emit.count(Emit::TRACES)) {
        std::ostringstream out;
        write_trace_csv(out, trace, columns, spec.stride);
        sink.put(rs.name + ".trace.csv", out.str());
        if (criterion) {
          std::ostringstream cs;
          write_criterion_csv(cs, *criterion);
          sink.put(rs.name + ".criterion.csv", cs.str());
        }
      }
      if (spec.emit.count(Emit::BOUNDS)) sink.put(rs.name + ".bounds.csv", reports_csv(rr.reports));
      if (spec.emit.count(Emit::HESS_GRAD))
        sink.put(rs.name + ".hess_grad.csv", hess_grad_outputs(*oracle, trace, rr));
      if (spec.emit.count(Emit::PLOTDATA)) {
        auto [it, inserted] = plots.try_emplace(rs.group);
        if (inserted) groups.push_back(rs.group);
        it->second.first.push_back(rs.name);
        it->second.second.push_back(gaps_of(trace));
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      rr.error = e.what();
    }
    result.runs.push_back(std::move(rr));
  }

  for (const auto& g : groups) {
    const auto& [names, gaps] = plots.at(g);
    std::ostringstream out;
    emit_plotdata(out, names, gaps, spec.stride);
    sink.put(g.empty() ? "plotdata.txt" : "plotdata_" + g + ".txt", out.str());
  }
  return result;
}

void emit_plotdata(std::ostream& out, const std::vector<std::string>& names,
                   const std::vector<std::vector<double>>& gaps, std::size_t stride) {
  if (names.empty() || names.size() != gaps.size())
    throw ConfigError("emit_plotdata: need one name per nonempty column set");
  if (stride == 0) stride = 1;
  std::size_t rows = 0;
  for (const auto& g : gaps) rows = std::max(rows, g.size());
  out << "# k";
  for (const auto& n : names) out << ' ' << n;
  out << '\n';
  std::string line;
  for (std::size_t k = 0; k < rows; ++k) {
    if (k % stride != 0 && k + 1 != rows) continue;
    line = std::to_string(k);
    for (const auto& g : gaps) {
      line += ' ';
      line += k < g.size() ? format_double(g[k]) : "nan";
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error("emit_plotdata: write failed");
}

void emit_plotdata(const std::vector<IterateTrace>& traces, const fs::path& path) {
  std::vector<std::string> names;
  std::vector<std::vector<double>> gaps;
  for (const auto& t : traces) {
    names.push_back(t.method());
    gaps.push_back(gaps_of(t));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("emit_plotdata: cannot open " + path.string());
  emit_plotdata(out, names, gaps);
}

}  // namespace gensmooth
