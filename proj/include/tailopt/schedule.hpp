#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tailopt/ansatz.hpp"
#include "tailopt/metrics.hpp"
#include "tailopt/objective.hpp"
#include "tailopt/optimizer.hpp"

namespace tailopt {

enum class ScheduleKind {
  kConstant,     // single stage at alpha_cap (plain CVaR optimization)
  kLinear,       // alpha0, alpha0 + lambda, alpha0 + 2*lambda, ...
  kSigmoid,      // 1 / (1 + e^{5 - lambda*t})
  kExponential,  // alpha0 * r^t, r chosen to match the linear stage count
  kLogarithmic,  // alpha0 + (cap - alpha0) * ln(1+t)/ln(1+T)
};

struct AscendingSchedule {
  ScheduleKind kind = ScheduleKind::kLinear;
  double lambda = 0.035;  // growth factor; per-stage increment for kLinear
  double alpha0 = 0.01;
  double alpha_cap = 1.0;
};

// Strictly increasing stage values; the last entry is exactly alpha_cap.
std::vector<double> alpha_sequence(const AscendingSchedule& schedule);

struct StageResult {
  double alpha = 0.0;
  std::vector<double> best_params;
  double best_value = 0.0;
  std::size_t evaluations = 0;
  std::uint64_t cumulative_shots = 0;     // across the whole run so far
  std::uint64_t first_params_hash = 0;    // hash of the stage's first evaluated point
};

struct AscendingRunOptions {
  // Restart the trust radius at rho_begin each stage (default); when false,
  // each stage resumes from the previous stage's final radius.
  bool reset_trust_radius = true;
  // When set, stop as soon as the tracked overlap reaches this value on a
  // stage that has already reached alpha_cap.
  std::optional<double> stop_overlap_threshold;
  // Ground truth for overlap tracking; computed by brute force (with
  // tie_tolerance) when not supplied.
  std::optional<GroundTruth> truth;
  double tie_tolerance = 0.0;
};

struct AscendingRunResult {
  std::vector<double> final_params;
  double final_value = 0.0;
  double final_overlap = 0.0;
  RunTrace trace;
  std::vector<StageResult> stages;
  bool budget_exhausted = false;  // evaluation budget ran out
  GroundTruth truth;
};

// True when the run should stop: the global evaluation budget is exhausted,
// or (threshold mode) the latest tracked overlap reached the threshold after
// alpha reached its cap.
bool stopping_condition(const RunTrace& trace, std::size_t budget,
                        std::optional<double> overlap_threshold, bool alpha_cap_reached);

// Evolving-objective driver: walks the alpha sequence, minimizing the
// CVaR_alpha objective at each stage warm-started from the previous stage's
// best parameters.  The global budget (config.max_evaluations) is divided
// evenly across stages with the remainder on the final stage.  Every
// objective evaluation appends a trace record with the exact overlap.
AscendingRunResult run_ascending_cvar(const Ansatz& ansatz, const DiagonalHamiltonian& h,
                                      const AscendingSchedule& schedule,
                                      const ObjectiveSpec& objective,
                                      const OptimizerConfig& optimizer,
                                      std::span<const double> initial_params, RandomSource& rng,
                                      const AscendingRunOptions& options = {});

}  // namespace tailopt
