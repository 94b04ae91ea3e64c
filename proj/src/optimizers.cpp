#include "gensmooth/optimizers.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "gensmooth/scalar_core.hpp"

namespace gensmooth {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<std::pair<Method, std::string_view>, 7> kMethodNames{{
    {Method::GD, "GD"},
    {Method::L0L1GD, "L0L1GD"},
    {Method::GDPS, "GDPS"},
    {Method::STM, "STM"},
    {Method::STM_MAX, "STM_MAX"},
    {Method::ADGD, "ADGD"},
    {Method::ADGD_SC, "ADGD_SC"},
}};

bool uses_params(Method m) {
  return m == Method::L0L1GD || m == Method::STM || m == Method::STM_MAX;
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : kMethodNames)
    if (method == m) return name;
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [method, n] : kMethodNames)
    if (n == name) return method;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (x0.size() == 0) throw ConfigError("x0 must be nonempty");
  if (!x0.allFinite()) throw ConfigError("x0 must be finite");
  if (!(grad_tol >= 0.0)) throw ConfigError("grad_tol must be nonnegative");
  switch (method) {
    case Method::GD:
    case Method::L0L1GD:
    case Method::STM:
    case Method::STM_MAX:
      if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("eta must be positive");
      break;
    case Method::ADGD:
      if (!(gamma > 0.0 && gamma <= 0.5)) throw ConfigError("gamma must lie in (0, 1/2]");
      [[fallthrough]];
    case Method::ADGD_SC:
      if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
        throw ConfigError("lambda0 must be positive");
      break;
    case Method::GDPS:
      break;
  }
  if (params) params->validate();
}

std::vector<std::string> RunConfig::theory_warnings() const {
  std::vector<std::string> out;
  if (uses_params(method) && eta > nu() / 2.0)
    out.push_back(std::string(method_name(method)) +
                  ": eta exceeds nu/2, outside the range covered by the convergence theory");
  return out;
}

Vector gd_step(const Vector& x, const Vector& g, double step) { return x - step * g; }

StepResult l0l1_gd_step(const Vector& x, const Vector& g, double eta, const SmoothnessParams& p) {
  StepResult r;
  r.step = eta / (p.L0 + p.L1 * g.stableNorm());
  r.x_next = x - r.step * g;
  return r;
}

StepResult gd_ps_step(const Vector& x, const Vector& g, double f_val, double f_star) {
  if (f_val < f_star - 1e-12 * std::max(1.0, std::abs(f_star)))
    throw InconsistentOptimumError("f(x) is below the declared optimal value f*");
  StepResult r;
  const double gn = g.stableNorm();
  const double step = gn > 0.0 ? (f_val - f_star) / gn / gn : 0.0;
  if (f_val <= f_star || !(step > 0.0) || !std::isfinite(step)) {
    r.x_next = x;
    r.step = 0.0;
    r.converged = true;
    return r;
  }
  r.step = step;
  r.x_next = x - r.step * g;
  return r;
}

StmState stm_init(const ObjectiveOracle& oracle, const Vector& x0, const SmoothnessParams& p) {
  StmState s;
  s.y = x0;
  s.z = x0;
  s.A = 0.0;
  s.G = p.L0 + p.L1 * checked_gradient(oracle, x0).stableNorm();
  s.k = 0;
  return s;
}

StmStep stm_step(const StmState& state, const ObjectiveOracle& oracle, double eta,
                 const SmoothnessParams& p, GRule rule) {
  StmStep out;
  out.alpha = eta * (static_cast<double>(state.k) + 2.0) / 2.0;
  const double A_next = state.A + out.alpha;
  out.x_probe = (state.A * state.y + out.alpha * state.z) / A_next;
  const Vector g = checked_gradient(oracle, out.x_probe);
  out.probe_grad_norm = g.stableNorm();
  const double local = p.L0 + p.L1 * out.probe_grad_norm;
  const double G_next = rule == GRule::MAX ? std::max(state.G, local) : local;

  out.state.z = state.z - (out.alpha / G_next) * g;
  out.state.y = (state.A * state.y + out.alpha * out.state.z) / A_next;
  out.state.A = A_next;
  out.state.G = G_next;
  out.state.k = state.k + 1;
  return out;
}

AdgdWarmup adgd_init(const Vector& x0, const Vector& g0, double lambda0) {
  if (!(lambda0 > 0.0)) throw StateError("AdGD: lambda0 must be positive");
  AdgdWarmup w;
  w.state.x_prev = x0;
  w.state.grad_prev = g0;
  w.state.lambda = lambda0;
  w.state.theta = kInf;
  w.state.weighted_sum = Vector::Zero(x0.size());
  w.x1 = x0 - lambda0 * g0;
  return w;
}

AdgdStep adgd_step(const AdgdState& state, const Vector& x, const Vector& g, double gamma,
                   AdgdRule rule) {
  if (!(state.lambda > 0.0)) throw StateError("AdGD: previous stepsize is not positive");
  const bool sc = rule == AdgdRule::STRONGLY_CONVEX;
  const double growth_coeff = sc ? 0.75 : 1.0;
  const double ratio_coeff = sc ? 0.25 : gamma;

  const Vector dx = x - state.x_prev;
  const double dg = (g - state.grad_prev).stableNorm();
  const double growth =
      std::isinf(state.theta) ? kInf : std::sqrt(1.0 + growth_coeff * state.theta) * state.lambda;
  const double ratio = dg == 0.0 ? kInf : ratio_coeff * (dx.stableNorm() / dg);
  const double lambda = std::min(growth, ratio);
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw StateError("AdGD: stepsize is undefined (lambda = " + std::to_string(lambda) + ")");
  const double theta = lambda / state.lambda;

  AdgdStep out;
  out.state = state;
  AdgdState& s = out.state;
  if (s.updates == 0) {
    s.sum_weights = lambda * theta + lambda;
  } else {
    double w = s.pending_weight - lambda * theta;
    if (w < -1e-12 * std::max(1.0, s.pending_weight)) {
      s.warnings.push_back("AdGD: negative averaging weight " + std::to_string(w) +
                           " clamped to 0 at update " + std::to_string(s.updates + 1));
      w = 0.0;
    }
    s.weighted_sum += w * s.x_prev;
    s.weight_mass += w;
    s.sum_weights += lambda;
  }
  s.pending_weight = lambda * (1.0 + theta);
  s.sum_sq_steps += dx.squaredNorm();
  s.x_prev = x;
  s.grad_prev = g;
  s.lambda = lambda;
  s.theta = theta;
  s.updates += 1;

  out.lambda = lambda;
  out.x_next = x - lambda * g;
  return out;
}

Vector adgd_weighted_average(const AdgdState& state, const Vector& x_final, double lambda_final,
                             double theta_final) {
  if (state.updates == 0) throw StateError("AdGD: no completed step to average");
  if (!(state.sum_weights > 0.0)) throw StateError("AdGD: weight normaliser S_N is not positive");
  const double last = lambda_final * (1.0 + theta_final);
  const double total = state.weight_mass + last;
  if (!(total > 0.0)) throw StateError("AdGD: averaging weights sum to a nonpositive value");
  return (state.weighted_sum + last * x_final) / total;
}

std::vector<std::string> trace_csv_columns(Method m) {
  switch (m) {
    case Method::STM:
    case Method::STM_MAX:
      return {"A", "G"};
    case Method::ADGD:
    case Method::ADGD_SC:
      return {"lambda", "theta"};
    default:
      return {};
  }
}

namespace {

struct Context {
  const ObjectiveOracle& oracle;
  const RunConfig& config;
  std::optional<Optimum> opt;

  double dist(const Vector& x) const { return opt ? (x - opt->x).stableNorm() : kNaN; }

  bool stop_on(double grad_norm, bool stationary_stops) const {
    if (config.grad_tol > 0.0 && grad_norm <= config.grad_tol) return true;
    return stationary_stops && grad_norm == 0.0;
  }
};

IterateTrace run_gradient_family(const Context& ctx, const SmoothnessParams* p) {
  const RunConfig& cfg = ctx.config;
  IterateTrace trace(std::string(method_name(cfg.method)), cfg.x0.size(), {});
  Vector x = cfg.x0;
  const double f_star = ctx.opt ? ctx.opt->f : kNaN;
  for (std::size_t k = 0;; ++k) {
    try {
      const double f = checked_value(ctx.oracle, x);
      const Vector g = checked_gradient(ctx.oracle, x);
      const double gn = g.stableNorm();
      StepResult s;
      switch (cfg.method) {
        case Method::GD:
          s.step = cfg.eta;
          s.x_next = gd_step(x, g, cfg.eta);
          break;
        case Method::L0L1GD:
          s = l0l1_gd_step(x, g, cfg.eta, *p);
          break;
        default:
          s = gd_ps_step(x, g, f, f_star);
          break;
      }
      trace.append(x, f, gn, s.step, ctx.dist(x), {});
      const bool stationary = gn == 0.0 || s.converged;
      const bool stop = ctx.stop_on(gn, true) || s.converged;
      if (stop) trace.converged = true;
      if (stationary && k < cfg.N) trace.stationary_stop = true;
      if (stop || k == cfg.N) break;
      x = std::move(s.x_next);
    } catch (const RunError&) {
      throw;
    } catch (const Error& e) {
      throw RunError(k, e.what());
    }
  }
  return trace;
}

IterateTrace run_stm(const Context& ctx, const SmoothnessParams& p) {
  const RunConfig& cfg = ctx.config;
  const GRule rule = cfg.method == Method::STM_MAX ? GRule::MAX : GRule::INSTANT;
  IterateTrace trace(std::string(method_name(cfg.method)), cfg.x0.size(),
                     {"A", "G", "alpha", "z_dist"});
  std::size_t k = 0;
  try {
    StmState state = stm_init(ctx.oracle, cfg.x0, p);
    const double f0 = checked_value(ctx.oracle, cfg.x0);
    const double g0 = checked_gradient(ctx.oracle, cfg.x0).stableNorm();
    trace.append(cfg.x0, f0, g0, kNaN, ctx.dist(cfg.x0), {0.0, state.G, 0.0, ctx.dist(cfg.x0)});
    if (ctx.stop_on(g0, false)) {
      trace.converged = true;
      return trace;
    }
    for (k = 1; k <= cfg.N; ++k) {
      StmStep st = stm_step(state, ctx.oracle, cfg.eta, p, rule);
      state = std::move(st.state);
      *trace.mutable_value(k - 1, "step") = st.alpha / state.G;
      const double f = checked_value(ctx.oracle, state.y);
      const double gn = checked_gradient(ctx.oracle, state.y).stableNorm();
      trace.append(state.y, f, gn, kNaN, ctx.dist(state.y),
                   {state.A, state.G, st.alpha, ctx.dist(state.z)});
      if (ctx.stop_on(gn, false)) {
        trace.converged = true;
        break;
      }
    }
  } catch (const Error& e) {
    throw RunError(k, e.what());
  }
  return trace;
}

IterateTrace run_adgd(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  const AdgdRule rule =
      cfg.method == Method::ADGD_SC ? AdgdRule::STRONGLY_CONVEX : AdgdRule::CONVEX;
  IterateTrace trace(std::string(method_name(cfg.method)), cfg.x0.size(), {"lambda", "theta"});
  std::size_t k = 0;
  try {
    const double f0 = checked_value(ctx.oracle, cfg.x0);
    const Vector g0 = checked_gradient(ctx.oracle, cfg.x0);
    trace.append(cfg.x0, f0, g0.stableNorm(), cfg.lambda0, ctx.dist(cfg.x0), {cfg.lambda0, kInf});
    if (ctx.stop_on(g0.stableNorm(), true)) {
      trace.converged = true;
      trace.stationary_stop = g0.stableNorm() == 0.0 && cfg.N > 0;
      return trace;
    }
    if (cfg.N == 0) return trace;

    AdgdWarmup warm = adgd_init(cfg.x0, g0, cfg.lambda0);
    AdgdState state = std::move(warm.state);
    Vector x = std::move(warm.x1);
    for (k = 1;; ++k) {
      const double f = checked_value(ctx.oracle, x);
      const Vector g = checked_gradient(ctx.oracle, x);
      AdgdStep st = adgd_step(state, x, g, cfg.gamma, rule);
      state = std::move(st.state);
      trace.append(x, f, g.stableNorm(), st.lambda, ctx.dist(x), {st.lambda, state.theta});
      const bool stop = ctx.stop_on(g.stableNorm(), true);
      if (stop) trace.converged = true;
      if (g.stableNorm() == 0.0 && k < cfg.N) trace.stationary_stop = true;
      if (stop || k == cfg.N) break;
      x = std::move(st.x_next);
    }

    const Vector last = trace.x(trace.last());
    Vector avg = adgd_weighted_average(state, last, state.lambda, state.theta);
    trace.summary["gamma"] = rule == AdgdRule::STRONGLY_CONVEX ? 0.25 : cfg.gamma;
    trace.summary["S_N"] = state.sum_weights;
    trace.summary["weight_total"] = state.weight_mass + state.pending_weight;
    trace.summary["sum_sq_steps"] = state.sum_sq_steps;
    trace.summary["f_hat"] = checked_value(ctx.oracle, avg);
    trace.averaged_point = std::move(avg);
    const double S = state.sum_weights;
    if (std::abs(trace.summary["weight_total"] - S) > 1e-10 * S)
      state.warnings.push_back("AdGD: averaging weights do not sum to S_N");
    trace.warnings.insert(trace.warnings.end(), state.warnings.begin(), state.warnings.end());
  } catch (const Error& e) {
    throw RunError(k, e.what());
  }
  return trace;
}

}  // namespace

IterateTrace run(const ObjectiveOracle& oracle, const RunConfig& config) {
  config.validate();
  if (config.x0.size() != oracle.dimension())
    throw ConfigError("x0 has length " + std::to_string(config.x0.size()) + ", oracle dimension is " +
                      std::to_string(oracle.dimension()));

  Context ctx{oracle, config, oracle.optimum()};
  std::optional<SmoothnessParams> p = config.params ? config.params : oracle.smoothness();
  if (uses_params(config.method) && !p)
    throw ConfigError(std::string(method_name(config.method)) + " needs smoothness constants");
  if (config.method == Method::GDPS && !ctx.opt)
    throw ConfigError("GDPS needs the optimal value f*");

  IterateTrace trace;
  switch (config.method) {
    case Method::GD:
    case Method::L0L1GD:
    case Method::GDPS:
      trace = run_gradient_family(ctx, p ? &*p : nullptr);
      break;
    case Method::STM:
    case Method::STM_MAX:
      trace = run_stm(ctx, *p);
      break;
    case Method::ADGD:
    case Method::ADGD_SC:
      trace = run_adgd(ctx);
      break;
  }
  if (ctx.opt) trace.f_star = ctx.opt->f;
  trace.budget = config.N;
  for (auto& w : config.theory_warnings()) trace.warnings.push_back(std::move(w));
  return trace;
}

}  // namespace gensmooth
