#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tailopt/random.hpp"

namespace tailopt {

struct OptimizerConfig {
  std::size_t max_evaluations = 0;
  double rho_begin = 0.5;  // initial trust-region radius
  double rho_end = 1e-4;   // final radius; reaching it terminates the search
  // Optional per-coordinate [lo, hi] box; candidate points are clipped into it.
  std::optional<std::vector<std::array<double, 2>>> bounds;
};

struct OptimizationResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;  // trust radius contracted down to rho_end
  double final_rho = 0.0;
  // (parameter hash, value) per evaluation, in evaluation order.
  std::vector<std::pair<std::uint64_t, double>> trace;
};

// Thrown when the objective returns NaN or infinity; carries the point.
class NonFiniteObjectiveError : public std::runtime_error {
 public:
  explicit NonFiniteObjectiveError(std::vector<double> params);
  const std::vector<double>& params() const { return params_; }

 private:
  std::vector<double> params_;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

// Derivative-free linear-approximation trust-region minimizer in the COBYLA
// mould: keeps a simplex of dim+1 points, interpolates a linear model of the
// objective over it, steps to the model minimum on the trust-region sphere,
// repairs the simplex geometry when it degenerates, and halves the radius
// from rho_begin down to rho_end when steps stop paying off.  Deterministic;
// stops early (converged = false) when the evaluation budget runs out.
OptimizationResult minimize(const ObjectiveFn& objective, std::span<const double> x0,
                            const OptimizerConfig& config);

// Independent uniform draws on [0, 2*pi).
std::vector<double> random_initial_params(std::size_t count, RandomSource& rng);

// FNV-1a over the raw parameter bytes; stable identity for trace entries.
std::uint64_t param_hash(std::span<const double> params);

}  // namespace tailopt
