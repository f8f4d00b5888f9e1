#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailopt/problems.hpp"
#include "tailopt/statevector.hpp"

namespace tailopt {

struct GroundTruth {
  double ground_energy = 0.0;
  std::vector<std::uint64_t> optimal_indices;  // ascending

  std::size_t degeneracy() const { return optimal_indices.size(); }
};

// Full scan of the 2^n energies: the minimum plus every index within
// tie_tolerance of it.  Use tolerance 0 for integer-valued problems and a
// relative tolerance (e.g. 1e-9 * max |E|) for real-valued ones.
GroundTruth brute_force_ground(const DiagonalHamiltonian& h, double tie_tolerance = 0.0);

// Total probability mass on the optimal basis states.
double overlap(const StateVector& state, const GroundTruth& truth);
double overlap(std::span<const double> probabilities, const GroundTruth& truth);

bool is_success(double overlap_value, double threshold = 0.10);

double normalized_iterations(std::size_t evaluations, std::size_t params);

// expectation / ground energy; throws std::domain_error when the ground
// energy is zero (e.g. perfectly partitionable instances).
double approximation_ratio(double expectation, const GroundTruth& truth);

// One record per objective evaluation.  t is the 0-based evaluation index.
struct TraceRecord {
  std::size_t t = 0;
  double alpha = 0.0;
  double objective = 0.0;
  double overlap = 0.0;  // exact, even when the objective is sampled
  std::uint64_t cumulative_shots = 0;
};

using RunTrace = std::vector<TraceRecord>;

// Evaluations spent strictly before the first record whose overlap reaches
// the threshold (its 0-based index), divided by the parameter count; nullopt
// when the run never got there.
std::optional<double> iterations_to_threshold(const RunTrace& trace, double threshold,
                                              std::size_t params);

struct RunRecord {
  std::string method;
  std::size_t param_count = 0;
  double final_overlap = 0.0;  // overlap of the state at the returned parameters
  RunTrace trace;
};

struct SummaryRow {
  std::string method;
  int runs = 0;
  int successful = 0;                       // runs whose tracked overlap reached the threshold
  double avg_overlap_pct = 0.0;             // mean final overlap over all runs, percent
  double avg_overlap_successful_pct = 0.0;  // same, over successful runs only
  std::optional<double> avg_norm_iters;     // mean normalized iterations to threshold
};

// Aggregates runs per method (first-seen order preserved).
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs, double threshold);

}  // namespace tailopt
