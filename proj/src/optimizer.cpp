#include "tailopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

namespace tailopt {

NonFiniteObjectiveError::NonFiniteObjectiveError(std::vector<double> params)
    : std::runtime_error("objective returned a non-finite value at a point with " +
                         std::to_string(params.size()) + " coordinates"),
      params_(std::move(params)) {}

namespace {

// Powell-style geometry thresholds: vertices further than kFarFactor * rho
// from the best point, or closer than kFlatFactor * rho to the opposite
// hyperplane, trigger a geometry-repair step at half the radius.
constexpr double kFarFactor = 2.1;
constexpr double kFlatFactor = 0.25;
constexpr double kGeometryStep = 0.5;
constexpr double kAcceptRatio = 0.1;
constexpr double kExpandRatio = 0.7;

struct Search {
  const ObjectiveFn& f;
  const OptimizerConfig& cfg;
  std::size_t dim;
  OptimizationResult res;

  explicit Search(const ObjectiveFn& f_in, const OptimizerConfig& cfg_in, std::size_t dim_in)
      : f(f_in), cfg(cfg_in), dim(dim_in) {}

  bool budget_left() const { return res.evaluations < cfg.max_evaluations; }

  void clip(std::vector<double>& x) const {
    if (!cfg.bounds) return;
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] = std::clamp(x[i], (*cfg.bounds)[i][0], (*cfg.bounds)[i][1]);
    }
  }

  // Caller must check budget_left() first.
  double eval(const std::vector<double>& x) {
    const double v = f(x);
    ++res.evaluations;
    if (!std::isfinite(v)) throw NonFiniteObjectiveError(x);
    res.trace.emplace_back(param_hash(x), v);
    if (res.best_params.empty() || v < res.best_value) {
      res.best_value = v;
      res.best_params = x;
    }
    return v;
  }
};

}  // namespace

OptimizationResult minimize(const ObjectiveFn& objective, std::span<const double> x0,
                            const OptimizerConfig& config) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw std::invalid_argument("minimize: empty parameter vector");
  if (config.max_evaluations == 0) throw std::invalid_argument("minimize: zero evaluation budget");
  if (!(config.rho_begin > config.rho_end) || !(config.rho_end > 0.0)) {
    throw std::invalid_argument("minimize: need rho_begin > rho_end > 0");
  }
  if (config.bounds) {
    if (config.bounds->size() != dim) throw std::invalid_argument("minimize: bounds size mismatch");
    for (std::size_t i = 0; i < dim; ++i) {
      const auto& [lo, hi] = (*config.bounds)[i];
      if (!(lo < hi)) throw std::invalid_argument("minimize: empty bound interval");
      if (x0[i] < lo || x0[i] > hi) {
        throw std::invalid_argument("minimize: initial point outside bounds");
      }
    }
  }

  Search s(objective, config, dim);
  // Two radii, as in Powell's derivative-free methods: delta is the working
  // step radius and adapts in both directions; rho is the accuracy level,
  // decreases monotonically, and bounds delta from below.  Keeping them
  // separate lets a failed step shorten the next attempt without committing
  // the whole search to a finer resolution.
  double rho = config.rho_begin;
  double delta = config.rho_begin;

  // Simplex: vertex 0 is kept as the incumbent best point.
  std::vector<std::vector<double>> X(dim + 1, std::vector<double>(x0.begin(), x0.end()));
  std::vector<double> F(dim + 1, 0.0);

  auto finish = [&](bool converged) {
    s.res.converged = converged;
    s.res.final_rho = rho;
    return std::move(s.res);
  };

  auto seed_vertex = [&](std::size_t j) {
    // Axis step from the incumbent; flip direction rather than leave the box.
    X[j] = X[0];
    double step = delta;
    if (config.bounds) {
      const auto& [lo, hi] = (*config.bounds)[j - 1];
      if (X[j][j - 1] + step > hi) step = -delta;
      if (X[j][j - 1] + step < lo) step = 0.5 * (hi - lo) - X[j][j - 1] + lo;
    }
    X[j][j - 1] += step;
    s.clip(X[j]);
  };

  F[0] = s.eval(X[0]);
  for (std::size_t j = 1; j <= dim; ++j) {
    if (!s.budget_left()) return finish(false);
    seed_vertex(j);
    F[j] = s.eval(X[j]);
  }

  Eigen::MatrixXd edges(dim, dim);
  Eigen::VectorXd df(dim);

  while (true) {
    // Keep the best vertex at slot 0.
    std::size_t best = 0;
    for (std::size_t j = 1; j <= dim; ++j) {
      if (F[j] < F[best]) best = j;
    }
    if (best != 0) {
      std::swap(X[0], X[best]);
      std::swap(F[0], F[best]);
    }

    for (std::size_t j = 1; j <= dim; ++j) {
      for (std::size_t i = 0; i < dim; ++i) edges(i, j - 1) = X[j][i] - X[0][i];
      df(j - 1) = F[j] - F[0];
    }

    const Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);
    if (!lu.isInvertible()) {
      // Degenerate simplex: rebuild it around the incumbent at the current radius.
      for (std::size_t j = 1; j <= dim; ++j) {
        if (!s.budget_left()) return finish(false);
        seed_vertex(j);
        F[j] = s.eval(X[j]);
      }
      continue;
    }
    const Eigen::MatrixXd inv = lu.inverse();
    // Row j of inv is normal to the edges spanned by the other vertices, so
    // 1/||row_j|| is the distance from vertex j to that hyperplane.
    const Eigen::VectorXd g = inv.transpose() * df;  // linear model gradient

    std::size_t offender = 0;
    double worst_far = kFarFactor * delta;
    double worst_flat = kFlatFactor * delta;
    bool offender_far = false;
    for (std::size_t j = 1; j <= dim; ++j) {
      double far = 0.0;
      for (std::size_t i = 0; i < dim; ++i) far += edges(i, j - 1) * edges(i, j - 1);
      far = std::sqrt(far);
      if (far > worst_far) {
        worst_far = far;
        offender = j;
        offender_far = true;
      }
    }
    if (offender == 0) {
      for (std::size_t j = 1; j <= dim; ++j) {
        const double flat = 1.0 / inv.row(j - 1).norm();
        if (flat < worst_flat) {
          worst_flat = flat;
          offender = j;
        }
      }
    }

    if (offender != 0) {
      // Geometry repair: move the offending vertex to half a radius from the
      // incumbent along its hyperplane normal, on the model's downhill side.
      (void)offender_far;
      Eigen::VectorXd normal = inv.row(offender - 1).transpose();
      normal /= normal.norm();
      if (g.dot(normal) > 0.0) normal = -normal;
      std::vector<double> cand = X[0];
      for (std::size_t i = 0; i < dim; ++i) cand[i] += kGeometryStep * delta * normal(i);
      s.clip(cand);
      if (!s.budget_left()) return finish(false);
      X[offender] = cand;
      F[offender] = s.eval(cand);
      continue;
    }

    // Trust-region step: linear model minimum on the delta-sphere.
    auto contract = [&]() -> bool {  // false once delta and rho both bottom out
      if (delta > rho * (1.0 + 1e-12)) {
        delta = std::max(0.5 * delta, rho);
        return true;
      }
      if (rho <= config.rho_end * (1.0 + 1e-12)) return false;
      rho *= 0.5;
      if (rho <= 1.5 * config.rho_end) rho = config.rho_end;
      delta = rho;
      return true;
    };

    const double gnorm = g.norm();
    if (!(gnorm > 0.0)) {
      if (!contract()) return finish(true);
      continue;
    }
    std::vector<double> cand = X[0];
    for (std::size_t i = 0; i < dim; ++i) cand[i] -= delta / gnorm * g(i);
    s.clip(cand);
    Eigen::VectorXd disp(dim);
    for (std::size_t i = 0; i < dim; ++i) disp(i) = cand[i] - X[0][i];
    const double predicted = -g.dot(disp);
    if (!(predicted > 1e-14 * (1.0 + std::fabs(F[0])))) {
      // The model cannot descend inside the box at this radius.
      if (!contract()) return finish(true);
      continue;
    }
    if (!s.budget_left()) return finish(false);
    const double f_best_before = F[0];
    const double f_new = s.eval(cand);

    // Replace the vertex whose barycentric weight along the step is largest;
    // this keeps the simplex volume from collapsing.
    const Eigen::VectorXd weights = inv * disp;
    std::size_t replace = 1;
    for (std::size_t j = 2; j <= dim; ++j) {
      if (std::fabs(weights(j - 1)) > std::fabs(weights(replace - 1))) replace = j;
    }
    X[replace] = std::move(cand);
    F[replace] = f_new;

    const double ratio = (f_best_before - f_new) / predicted;
    if (ratio < kAcceptRatio) {
      if (!contract()) return finish(true);
    } else if (ratio >= kExpandRatio) {
      delta = std::min(2.0 * delta, config.rho_begin);
    }
  }
}

std::vector<double> random_initial_params(std::size_t count, RandomSource& rng) {
  std::vector<double> out(count);
  for (auto& v : out) v = rng.uniform_double(0.0, 2.0 * std::numbers::pi);
  return out;
}

std::uint64_t param_hash(std::span<const double> params) {
  return fnv1a64(params.data(), params.size() * sizeof(double));
}

}  // namespace tailopt
