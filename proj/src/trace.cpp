#include "gensmooth/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <ostream>

#include "gensmooth/format.hpp"

namespace gensmooth {

IterateTrace::IterateTrace(std::string method, Eigen::Index dim,
                           std::vector<std::string> state_names)
    : method_(std::move(method)), dim_(dim), state_names_(std::move(state_names)) {}

void IterateTrace::append(const Vector& x, double f, double grad_norm, double step, double dist,
                          const std::vector<double>& state) {
  if (x.size() != dim_) throw StateError("trace: iterate has wrong dimension");
  if (state.size() != state_names_.size()) throw StateError("trace: state has wrong arity");
  xs_.insert(xs_.end(), x.data(), x.data() + x.size());
  f_.push_back(f);
  grad_norm_.push_back(grad_norm);
  step_.push_back(step);
  dist_.push_back(dist);
  state_.insert(state_.end(), state.begin(), state.end());
}

Eigen::Map<const Vector> IterateTrace::x(std::size_t k) const {
  return Eigen::Map<const Vector>(xs_.data() + k * static_cast<std::size_t>(dim_), dim_);
}

bool IterateTrace::has_state(std::string_view name) const {
  return std::find(state_names_.begin(), state_names_.end(), name) != state_names_.end();
}

double IterateTrace::state(std::size_t k, std::string_view name) const {
  const auto it = std::find(state_names_.begin(), state_names_.end(), name);
  if (it == state_names_.end()) return std::numeric_limits<double>::quiet_NaN();
  const auto col = static_cast<std::size_t>(it - state_names_.begin());
  return state_[k * state_names_.size() + col];
}

double* IterateTrace::mutable_value(std::size_t k, std::string_view column,
                                    Eigen::Index component) {
  if (k >= size()) return nullptr;
  if (column == "x") {
    if (component < 0 || component >= dim_) return nullptr;
    return &xs_[k * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(component)];
  }
  if (column == "f") return &f_[k];
  if (column == "grad_norm") return &grad_norm_[k];
  if (column == "step") return &step_[k];
  if (column == "dist_to_opt") return &dist_[k];
  const auto it = std::find(state_names_.begin(), state_names_.end(), column);
  if (it == state_names_.end()) return nullptr;
  return &state_[k * state_names_.size() + static_cast<std::size_t>(it - state_names_.begin())];
}

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

bool IterateTrace::operator==(const IterateTrace& o) const {
  if (method_ != o.method_ || dim_ != o.dim_ || state_names_ != o.state_names_) return false;
  if (!same_bits(xs_, o.xs_) || !same_bits(f_, o.f_) || !same_bits(grad_norm_, o.grad_norm_) ||
      !same_bits(step_, o.step_) || !same_bits(dist_, o.dist_) || !same_bits(state_, o.state_))
    return false;
  if (converged != o.converged || budget != o.budget || stationary_stop != o.stationary_stop)
    return false;
  if (summary.size() != o.summary.size()) return false;
  for (auto a = summary.begin(), b = o.summary.begin(); a != summary.end(); ++a, ++b) {
    if (a->first != b->first) return false;
    if (std::memcmp(&a->second, &b->second, sizeof(double)) != 0) return false;
  }
  if (averaged_point.has_value() != o.averaged_point.has_value()) return false;
  if (averaged_point) {
    const auto& p = *averaged_point;
    const auto& q = *o.averaged_point;
    if (p.size() != q.size() ||
        std::memcmp(p.data(), q.data(), static_cast<std::size_t>(p.size()) * sizeof(double)) != 0)
      return false;
  }
  return true;
}

void write_trace_csv(std::ostream& out, const IterateTrace& trace,
                     const std::vector<std::string>& extra, std::size_t stride) {
  if (stride == 0) stride = 1;
  out << "k,f,grad_norm,step,dist_to_opt";
  for (const auto& name : extra) out << ',' << name;
  out << '\n';
  std::string line;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (k % stride != 0 && k != trace.last()) continue;
    line.clear();
    line += std::to_string(k);
    for (double v : {trace.f(k), trace.grad_norm(k), trace.step(k), trace.dist_to_opt(k)}) {
      line += ',';
      line += format_double(v);
    }
    for (const auto& name : extra) {
      line += ',';
      line += format_double(trace.state(k, name));
    }
    line += '\n';
    out << line;
  }
}

}  // namespace gensmooth
