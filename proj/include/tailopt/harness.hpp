#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tailopt/instance_io.hpp"
#include "tailopt/metrics.hpp"
#include "tailopt/schedule.hpp"

namespace tailopt {

enum class ProblemFamily { kMaxCut, kNumberPartition, kPortfolio };
enum class AnsatzKind { kHardwareEfficient, kQaoa };

struct MethodSpec {
  std::string name;
  AscendingSchedule schedule;
  ObjectiveMode mode = ObjectiveMode::kSampled;
};

// Family-specific generator knobs; only the relevant ones are read.
struct GenerationConfig {
  MaxCutFamily maxcut_family = MaxCutFamily::kRandomNonRegular;
  double density = 0.5;            // edge probability for random graphs
  int degree = 3;                  // for regular graphs
  std::int64_t numpart_bound = 500;
  double risk_aversion = 0.5;
};

struct ExperimentSpec {
  ProblemFamily family = ProblemFamily::kMaxCut;
  GenerationConfig generation;
  int instance_count = 20;
  int qubits_min = 10;
  int qubits_max = 12;
  AnsatzKind ansatz = AnsatzKind::kHardwareEfficient;
  int ansatz_layers = 1;
  std::vector<MethodSpec> methods;  // empty selects the default roster
  std::size_t base_shots = 1000;
  int budget_multiplier = 66;
  double success_threshold = 0.10;
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";
  int threads = 0;  // 0 = hardware concurrency
};

// Ascending-CVaR with the linear and sigmoid ramps, plus constant CVaR at
// alpha in {0.1, 0.2, 0.5, 1}.
std::vector<MethodSpec> default_method_roster();

// Throws std::runtime_error with a descriptive message on malformed input.
ExperimentSpec parse_experiment_spec(const std::string& json_text);

// Deterministic instance set for the spec: sizes cycle through
// [qubits_min, qubits_max], seeds derive from the master seed.
std::vector<InstanceRecord> generate_instances(const ExperimentSpec& spec);

// Runs every instance x method pair in a small work pool, then writes per-run
// trace CSVs, instance and ground-truth JSONs, a runs.json manifest, and
// summary.csv under output_dir.  Returns 0 when every run completed, 1 when
// some failed (completed artifacts are kept).
int run_experiment(const ExperimentSpec& spec);

struct LandscapeRequest {
  std::vector<double> alphas;
  int resolution = 50;
  std::string output_dir = "out";
};

// CVaR landscape of the single-layer QAOA circuit for the instance, one
// res x res (gamma, beta) grid CSV per alpha plus a landscape_meta.json with
// the per-grid minima and the best ground-state mass the grid reaches.
// beta spans [0, pi); gamma spans [0, gamma bound) for number partitioning
// and [0, 2*pi) otherwise.
int emit_landscape(const InstanceRecord& record, const LandscapeRequest& request);

// Reads runs.json + trace CSVs from a completed experiment directory and
// writes per-run (normalized_iteration, overlap) and
// (cumulative_shots, overlap) curve CSVs next to them.
int emit_plot_data(const std::string& run_dir);

// 0 for the integer-valued families, 1e-9 * max|E| for portfolio.
double default_tie_tolerance(const ProblemInstance& instance, const DiagonalHamiltonian& h);

}  // namespace tailopt
