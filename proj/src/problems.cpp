#include "gensmooth/problems.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gensmooth/rng.hpp"

namespace gensmooth {
namespace {

class PowerNorm final : public ObjectiveOracle {
 public:
  PowerNorm(Eigen::Index d, int n) : d_(d), n_(n) {
    optimum_ = Optimum{Vector::Zero(d), 0.0};
    SmoothnessParams p;
    p.L0 = 2.0 * n;
    p.L1 = 2.0 * n - 1.0;
    if (n == 1) p.L_classical = 2.0;
    smoothness_ = p;
  }

  std::string name() const override {
    return "power_norm(d=" + std::to_string(d_) + ",n=" + std::to_string(n_) + ")";
  }
  Eigen::Index dimension() const override { return d_; }

  double value(const Vector& x) const override { return std::pow(x.squaredNorm(), n_); }

  Vector gradient(const Vector& x) const override {
    const double scale = n_ == 1 ? 2.0 : 2.0 * n_ * std::pow(x.squaredNorm(), n_ - 1);
    return scale * x;
  }

 private:
  Eigen::Index d_;
  int n_;
};

class ExpInner final : public ObjectiveOracle {
 public:
  explicit ExpInner(Vector a) : a_(std::move(a)) {
    SmoothnessParams p;
    p.L0 = 1e-12;
    p.L1 = a_.stableNorm();
    smoothness_ = p;
  }

  std::string name() const override { return "exp_inner"; }
  Eigen::Index dimension() const override { return a_.size(); }
  double value(const Vector& x) const override { return std::exp(a_.dot(x)); }
  Vector gradient(const Vector& x) const override { return std::exp(a_.dot(x)) * a_; }

 private:
  Vector a_;
};

class QuarticRegularized final : public ObjectiveOracle {
 public:
  QuarticRegularized(Eigen::Index d, double mu) : d_(d), mu_(mu) {
    optimum_ = Optimum{Vector::Zero(d), 0.0};
    SmoothnessParams p;
    p.L0 = mu + 12.0;
    p.L1 = 3.0;
    p.mu = mu;
    smoothness_ = p;
  }

  std::string name() const override { return "quartic_reg"; }
  Eigen::Index dimension() const override { return d_; }

  double value(const Vector& x) const override {
    const double r2 = x.squaredNorm();
    return 0.5 * mu_ * r2 + r2 * r2;
  }

  Vector gradient(const Vector& x) const override {
    return (mu_ + 4.0 * x.squaredNorm()) * x;
  }

 private:
  Eigen::Index d_;
  double mu_;
};

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// 1 / (1 + exp(t)).
double logistic_weight(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

class Logistic final : public ObjectiveOracle {
 public:
  struct Entry {
    Eigen::Index index;
    double value;
  };

  Logistic(const SparseDataset& data, double mu) : d_(static_cast<Eigen::Index>(data.max_index)), mu_(mu) {
    if (data.rows.empty()) throw ConfigError("logistic: empty dataset");
    if (d_ == 0) throw ConfigError("logistic: dataset has no features");
    if (!(mu >= 0.0)) throw ConfigError("logistic: mu must be nonnegative");
    double max_norm = 0.0;
    for (const auto& row : data.rows) {
      std::vector<Entry> entries;
      double sq = 0.0;
      for (const auto& [index, value] : row.features) {
        entries.push_back({static_cast<Eigen::Index>(index) - 1, value});
        sq += value * value;
      }
      max_norm = std::max(max_norm, std::sqrt(sq));
      rows_.push_back(std::move(entries));
      labels_.push_back(row.label > 0 ? 1.0 : -1.0);
    }
    if (mu == 0.0) {
      SmoothnessParams p;
      p.L0 = 1e-12;
      p.L1 = max_norm;
      p.L_classical = max_norm * max_norm;
      component_smoothness_ = p;
      if (rows_.size() == 1) smoothness_ = p;
    }
    if (mu > 0.0) optimum_ = newton_optimum();
  }

  std::string name() const override { return "logistic"; }
  Eigen::Index dimension() const override { return d_; }
  std::size_t component_count() const override { return rows_.size(); }

  double value(const Vector& x) const override {
    double sum = 0.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) sum += softplus(-margin(i, x));
    return sum / static_cast<double>(rows_.size()) + 0.5 * mu_ * x.squaredNorm();
  }

  Vector gradient(const Vector& x) const override {
    Vector g = mu_ * x;
    const double inv_n = 1.0 / static_cast<double>(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double coeff = -labels_[i] * logistic_weight(margin(i, x)) * inv_n;
      for (const auto& e : rows_[i]) g[e.index] += coeff * e.value;
    }
    return g;
  }

  double component_value(std::size_t i, const Vector& x) const override {
    check_index(i);
    return softplus(-margin(i, x)) + 0.5 * mu_ * x.squaredNorm();
  }

  Vector component_gradient(std::size_t i, const Vector& x) const override {
    check_index(i);
    Vector g = mu_ * x;
    const double coeff = -labels_[i] * logistic_weight(margin(i, x));
    for (const auto& e : rows_[i]) g[e.index] += coeff * e.value;
    return g;
  }

 private:
  double margin(std::size_t i, const Vector& x) const {
    double t = 0.0;
    for (const auto& e : rows_[i]) t += e.value * x[e.index];
    return labels_[i] * t;
  }

  void check_index(std::size_t i) const {
    if (i >= rows_.size()) throw ConfigError("logistic: component index out of range");
  }

  Matrix hessian(const Vector& x) const {
    Matrix H = mu_ * Matrix::Identity(d_, d_);
    const double inv_n = 1.0 / static_cast<double>(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double s = logistic_weight(margin(i, x));
      const double w = s * (1.0 - s) * inv_n;
      for (const auto& a : rows_[i])
        for (const auto& b : rows_[i]) H(a.index, b.index) += w * a.value * b.value;
    }
    return H;
  }

  Optimum newton_optimum() const {
    Vector x = Vector::Zero(d_);
    double fx = value(x);
    for (int it = 0; it < 200; ++it) {
      const Vector g = gradient(x);
      if (g.stableNorm() <= 1e-14 * std::max(1.0, fx)) break;
      const Vector dir = hessian(x).ldlt().solve(-g);
      const double slope = g.dot(dir);
      double t = 1.0;
      Vector next = x + dir;
      double fn = value(next);
      while (fn > fx + 1e-4 * t * slope && t > 1e-12) {
        t *= 0.5;
        next = x + t * dir;
        fn = value(next);
      }
      if (!(fn <= fx) || (next - x).stableNorm() == 0.0) break;
      x = next;
      fx = fn;
    }
    return Optimum{x, fx};
  }

  Eigen::Index d_;
  double mu_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<double> labels_;
};

class SharedMinQuartic final : public ObjectiveOracle {
 public:
  SharedMinQuartic(const Matrix& A, const Vector& x_star) : A_(A), b_(A * x_star) {
    if (A.rows() == 0) throw ConfigError("shared_min_quartic: need at least one row");
    if (A.cols() != x_star.size()) throw ConfigError("shared_min_quartic: x_star length mismatch");
    double max_norm = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const double r = A.row(i).stableNorm();
      if (r == 0.0) throw ConfigError("shared_min_quartic: zero row " + std::to_string(i));
      max_norm = std::max(max_norm, r);
    }
    optimum_ = Optimum{x_star, 0.0};
    component_optima_ = std::vector<double>(static_cast<std::size_t>(A.rows()), 0.0);
    SmoothnessParams p;
    p.L0 = 12.0 * max_norm * max_norm;
    p.L1 = 3.0 * max_norm;
    component_smoothness_ = p;
    if (A.rows() == 1) smoothness_ = p;
  }

  std::string name() const override { return "shared_min_quartic"; }
  Eigen::Index dimension() const override { return A_.cols(); }
  std::size_t component_count() const override { return static_cast<std::size_t>(A_.rows()); }

  double value(const Vector& x) const override {
    const Vector t = A_ * x - b_;
    return t.array().pow(4).sum() / static_cast<double>(A_.rows());
  }

  Vector gradient(const Vector& x) const override {
    const Vector t = A_ * x - b_;
    const Vector c = 4.0 * t.array().cube();
    return A_.transpose() * c / static_cast<double>(A_.rows());
  }

  double component_value(std::size_t i, const Vector& x) const override {
    const double t = residual(i, x);
    return (t * t) * (t * t);
  }

  Vector component_gradient(std::size_t i, const Vector& x) const override {
    const double t = residual(i, x);
    return (4.0 * t * t * t) * A_.row(static_cast<Eigen::Index>(i)).transpose();
  }

 private:
  double residual(std::size_t i, const Vector& x) const {
    if (i >= static_cast<std::size_t>(A_.rows()))
      throw ConfigError("shared_min_quartic: component index out of range");
    const auto r = static_cast<Eigen::Index>(i);
    return A_.row(r).dot(x) - b_[r];
  }

  Matrix A_;
  Vector b_;
};

}  // namespace

OraclePtr make_power_norm(Eigen::Index d, int n) {
  if (d < 1) throw ConfigError("power_norm: d must be positive");
  if (n < 1) throw ConfigError("power_norm: n must be positive");
  return std::make_shared<PowerNorm>(d, n);
}

OraclePtr make_exp_inner(const Vector& a) {
  if (a.size() == 0 || a.stableNorm() == 0.0) throw ConfigError("exp_inner: a must be nonzero");
  return std::make_shared<ExpInner>(a);
}

OraclePtr make_logistic(const SparseDataset& data, double mu) {
  return std::make_shared<Logistic>(data, mu);
}

OraclePtr make_quartic_regularized(Eigen::Index d, double mu) {
  if (d < 1) throw ConfigError("quartic_reg: d must be positive");
  if (!(mu > 0.0)) throw ConfigError("quartic_reg: mu must be positive");
  return std::make_shared<QuarticRegularized>(d, mu);
}

OraclePtr make_shared_min_quartic(const Matrix& A, const Vector& x_star) {
  return std::make_shared<SharedMinQuartic>(A, x_star);
}

SharedMinInstance random_shared_min_instance(Eigen::Index n, Eigen::Index d,
                                             std::uint64_t seed) {
  if (n < 1 || d < 1) throw ConfigError("shared_min_quartic: n and d must be positive");
  const CounterRng rng(seed);
  std::uint64_t counter = 0;
  SharedMinInstance inst{Matrix(n, d), Vector(d)};
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector row(d);
    do {
      for (Eigen::Index j = 0; j < d; ++j) row[j] = rng.normal(counter++);
    } while (row.stableNorm() == 0.0);
    inst.A.row(i) = row.normalized().transpose();
  }
  for (Eigen::Index j = 0; j < d; ++j) inst.x_star[j] = rng.normal(counter++);
  return inst;
}

SparseDataset make_toy_logistic_dataset(Eigen::Index d, std::uint64_t seed,
                                        std::size_t flipped_index) {
  if (d < 1) throw ConfigError("toy_logistic: d must be positive");
  if (flipped_index >= static_cast<std::size_t>(d))
    throw ConfigError("toy_logistic: flipped_index must be below d");
  const CounterRng rng(seed);
  SparseDataset data;
  data.max_index = static_cast<std::size_t>(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    SparseDataset::Row row;
    row.label = static_cast<std::size_t>(i) == flipped_index ? -1 : 1;
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto counter = static_cast<std::uint64_t>(i * d + j);
      row.features.emplace_back(static_cast<std::size_t>(j + 1),
                                static_cast<double>(j + 1) + rng.normal(counter));
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace gensmooth
