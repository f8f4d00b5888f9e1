#include "tailopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace tailopt {

GroundTruth brute_force_ground(const DiagonalHamiltonian& h, double tie_tolerance) {
  if (tie_tolerance < 0.0) throw std::invalid_argument("brute_force_ground: negative tolerance");
  GroundTruth truth;
  truth.ground_energy = h.min_energy();
  const double cutoff = truth.ground_energy + tie_tolerance;
  for (std::uint64_t b = 0; b < h.dim(); ++b) {
    if (h.energy_of(b) <= cutoff) truth.optimal_indices.push_back(b);
  }
  return truth;
}

double overlap(const StateVector& state, const GroundTruth& truth) {
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (std::uint64_t idx : truth.optimal_indices) {
    if (idx >= amps.size()) throw std::invalid_argument("overlap: optimal index out of range");
    total += std::norm(amps[idx]);
  }
  return total;
}

double overlap(std::span<const double> probabilities, const GroundTruth& truth) {
  double total = 0.0;
  for (std::uint64_t idx : truth.optimal_indices) {
    if (idx >= probabilities.size()) throw std::invalid_argument("overlap: optimal index out of range");
    total += probabilities[idx];
  }
  return total;
}

bool is_success(double overlap_value, double threshold) { return overlap_value >= threshold; }

double normalized_iterations(std::size_t evaluations, std::size_t params) {
  if (params == 0) throw std::invalid_argument("normalized_iterations: zero parameter count");
  return static_cast<double>(evaluations) / static_cast<double>(params);
}

double approximation_ratio(double expectation, const GroundTruth& truth) {
  if (truth.ground_energy == 0.0) {
    throw std::domain_error("approximation_ratio: ground energy is zero");
  }
  return expectation / truth.ground_energy;
}

std::optional<double> iterations_to_threshold(const RunTrace& trace, double threshold,
                                              std::size_t params) {
  for (const auto& rec : trace) {
    if (rec.overlap >= threshold) {
      return normalized_iterations(rec.t, params);
    }
  }
  return std::nullopt;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs, double threshold) {
  std::vector<SummaryRow> rows;
  auto row_for = [&](const std::string& method) -> SummaryRow& {
    for (auto& r : rows) {
      if (r.method == method) return r;
    }
    rows.push_back(SummaryRow{method, 0, 0, 0.0, 0.0, std::nullopt});
    return rows.back();
  };

  struct Accum {
    double overlap_all = 0.0;
    double overlap_success = 0.0;
    double norm_iters = 0.0;
    int n_success = 0;
  };
  std::vector<Accum> acc;

  for (const auto& run : runs) {
    SummaryRow& row = row_for(run.method);
    const std::size_t slot = static_cast<std::size_t>(&row - rows.data());
    if (acc.size() <= slot) acc.resize(rows.size());
    row.runs += 1;
    acc[slot].overlap_all += run.final_overlap;
    const auto reached = iterations_to_threshold(run.trace, threshold, run.param_count);
    if (reached) {
      row.successful += 1;
      acc[slot].n_success += 1;
      acc[slot].overlap_success += run.final_overlap;
      acc[slot].norm_iters += *reached;
    }
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].runs > 0) rows[i].avg_overlap_pct = 100.0 * acc[i].overlap_all / rows[i].runs;
    if (acc[i].n_success > 0) {
      rows[i].avg_overlap_successful_pct = 100.0 * acc[i].overlap_success / acc[i].n_success;
      rows[i].avg_norm_iters = acc[i].norm_iters / acc[i].n_success;
    }
  }
  return rows;
}

}  // namespace tailopt
