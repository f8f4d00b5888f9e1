#include "tailopt/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tailopt {

namespace {

void validate_schedule(const AscendingSchedule& s) {
  if (!(s.alpha0 > 0.0) || !(s.alpha0 <= s.alpha_cap) || !(s.alpha_cap <= 1.0)) {
    throw std::invalid_argument("schedule: need 0 < alpha0 <= alpha_cap <= 1");
  }
  if (s.kind != ScheduleKind::kConstant && !(s.lambda > 0.0)) {
    throw std::invalid_argument("schedule: growth factor must be positive");
  }
}

std::vector<double> linear_sequence(double alpha0, double lambda, double cap) {
  std::vector<double> seq;
  for (std::size_t t = 0;; ++t) {
    const double a = alpha0 + static_cast<double>(t) * lambda;
    if (a >= cap) {
      seq.push_back(cap);
      break;
    }
    seq.push_back(a);
  }
  return seq;
}

}  // namespace

std::vector<double> alpha_sequence(const AscendingSchedule& schedule) {
  validate_schedule(schedule);
  const double cap = schedule.alpha_cap;
  const double alpha0 = schedule.alpha0;
  const double lambda = schedule.lambda;

  switch (schedule.kind) {
    case ScheduleKind::kConstant:
      return {cap};

    case ScheduleKind::kLinear:
      return linear_sequence(alpha0, lambda, cap);

    case ScheduleKind::kSigmoid: {
      // 1/(1 + e^{5 - lambda t}), starting no lower than alpha0 and clamped
      // to the cap once within 0.1% of saturation.  Entries that do not
      // exceed the previous one (possible right after the alpha0 floor) are
      // dropped to keep the sequence strictly increasing.
      const double stop = std::min(0.999, cap);
      std::vector<double> seq;
      double first = std::max(alpha0, 1.0 / (1.0 + std::exp(5.0)));
      if (first >= stop) return {cap};
      seq.push_back(first);
      for (std::size_t t = 1;; ++t) {
        const double a = 1.0 / (1.0 + std::exp(5.0 - lambda * static_cast<double>(t)));
        if (a >= stop) {
          seq.push_back(cap);
          break;
        }
        if (a > seq.back()) seq.push_back(a);
      }
      return seq;
    }

    case ScheduleKind::kExponential: {
      // Geometric ramp alpha0 * r^t hitting the cap in the same stage count
      // as the linear schedule with the same growth factor.
      const std::size_t stages = linear_sequence(alpha0, lambda, cap).size();
      if (stages <= 1) return {cap};
      const double r = std::pow(cap / alpha0, 1.0 / static_cast<double>(stages - 1));
      std::vector<double> seq;
      for (std::size_t t = 0; t + 1 < stages; ++t) {
        seq.push_back(alpha0 * std::pow(r, static_cast<double>(t)));
      }
      seq.push_back(cap);
      return seq;
    }

    case ScheduleKind::kLogarithmic: {
      const std::size_t stages = linear_sequence(alpha0, lambda, cap).size();
      if (stages <= 1) return {cap};
      const double total = static_cast<double>(stages - 1);
      std::vector<double> seq;
      for (std::size_t t = 0; t + 1 < stages; ++t) {
        seq.push_back(alpha0 + (cap - alpha0) * std::log1p(static_cast<double>(t)) / std::log1p(total));
      }
      seq.push_back(cap);
      return seq;
    }
  }
  throw std::invalid_argument("schedule: unknown kind");
}

bool stopping_condition(const RunTrace& trace, std::size_t budget,
                        std::optional<double> overlap_threshold, bool alpha_cap_reached) {
  if (trace.size() >= budget) return true;
  return overlap_threshold && alpha_cap_reached && !trace.empty() &&
         trace.back().overlap >= *overlap_threshold;
}

namespace {

// Signals an early stop out of a stage's inner optimization; the stage-best
// parameters tracked alongside the trace survive the unwind.
struct EarlyStop {};

}  // namespace

AscendingRunResult run_ascending_cvar(const Ansatz& ansatz, const DiagonalHamiltonian& h,
                                      const AscendingSchedule& schedule,
                                      const ObjectiveSpec& objective,
                                      const OptimizerConfig& optimizer,
                                      std::span<const double> initial_params, RandomSource& rng,
                                      const AscendingRunOptions& options) {
  const int n_params = param_count(ansatz);
  if (initial_params.size() != static_cast<std::size_t>(n_params)) {
    throw std::invalid_argument("run_ascending_cvar: initial parameter count mismatch");
  }
  if (ansatz_qubits(ansatz) != h.n_qubits()) {
    throw std::invalid_argument("run_ascending_cvar: ansatz and hamiltonian qubit counts differ");
  }
  if (optimizer.max_evaluations == 0) {
    throw std::invalid_argument("run_ascending_cvar: zero evaluation budget");
  }

  const std::vector<double> alphas = alpha_sequence(schedule);
  const std::size_t budget = optimizer.max_evaluations;
  const std::size_t stages = alphas.size();
  const std::size_t per_stage = budget / stages;
  const std::size_t remainder = budget % stages;

  AscendingRunResult out;
  out.truth = options.truth ? *options.truth : brute_force_ground(h, options.tie_tolerance);

  std::vector<double> current(initial_params.begin(), initial_params.end());
  std::uint64_t shots_total = 0;
  std::size_t used = 0;
  double carried_rho = optimizer.rho_begin;

  for (std::size_t si = 0; si < stages; ++si) {
    const double alpha = alphas[si];
    const bool last_stage = (si + 1 == stages);
    std::size_t stage_budget = per_stage + (last_stage ? remainder : 0);
    stage_budget = std::min(stage_budget, budget - used);
    if (stage_budget == 0) {
      out.budget_exhausted = true;
      break;
    }

    ObjectiveSpec stage_objective = objective;
    stage_objective.alpha = alpha;

    // Stage-best bookkeeping mirrors the optimizer's, so an early stop can
    // recover the incumbent even though the optimizer result is abandoned.
    double stage_best_value = std::numeric_limits<double>::infinity();
    std::vector<double> stage_best_params;
    std::uint64_t stage_first_hash = 0;
    const std::size_t trace_before = out.trace.size();
    const bool cap_reached = (alpha == schedule.alpha_cap);

    auto stage_fn = [&](std::span<const double> params) -> double {
      StateVector state = prepare(ansatz, params);
      const Evaluation ev = evaluate(stage_objective, state, h, rng);
      shots_total += ev.shots_used;
      const double ov = overlap(state, out.truth);
      if (out.trace.size() == trace_before) stage_first_hash = param_hash(params);
      out.trace.push_back({out.trace.size(), alpha, ev.value, ov, shots_total});
      if (ev.value < stage_best_value) {
        stage_best_value = ev.value;
        stage_best_params.assign(params.begin(), params.end());
      }
      if (stopping_condition(out.trace, budget, options.stop_overlap_threshold, cap_reached) &&
          out.trace.size() < budget) {
        throw EarlyStop{};
      }
      return ev.value;
    };

    OptimizerConfig stage_config = optimizer;
    stage_config.max_evaluations = stage_budget;
    if (!options.reset_trust_radius && si > 0) {
      stage_config.rho_begin = std::max(carried_rho, 10.0 * optimizer.rho_end);
    }

    StageResult stage;
    stage.alpha = alpha;
    bool stopped_early = false;
    try {
      OptimizationResult r = minimize(stage_fn, current, stage_config);
      current = r.best_params;
      carried_rho = r.final_rho;
      stage.best_params = std::move(r.best_params);
      stage.best_value = r.best_value;
      stage.evaluations = r.evaluations;
    } catch (const EarlyStop&) {
      current = stage_best_params;
      stage.best_params = stage_best_params;
      stage.best_value = stage_best_value;
      stage.evaluations = out.trace.size() - trace_before;
      stopped_early = true;
    }
    stage.first_params_hash = stage_first_hash;
    used = out.trace.size();
    stage.cumulative_shots = shots_total;
    out.stages.push_back(std::move(stage));
    if (stopped_early) break;
    if (used >= budget) {
      out.budget_exhausted = true;
      break;
    }
  }

  out.final_params = current;
  out.final_value = out.stages.empty() ? std::numeric_limits<double>::quiet_NaN()
                                       : out.stages.back().best_value;
  const StateVector final_state = prepare(ansatz, current);
  out.final_overlap = overlap(final_state, out.truth);
  if (used >= budget) out.budget_exhausted = true;
  return out;
}

}  // namespace tailopt
