#include "tailopt/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "json.hpp"

namespace tailopt {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_f4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string sanitize_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '-');
  }
  return out;
}

std::string instance_tag(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "i%02d", index);
  return buf;
}

// Write-to-temp-then-rename so concurrent runs never expose partial files.
void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trace_csv(const RunTrace& trace) {
  std::string out = "t,alpha,objective,overlap,cumulative_shots\n";
  for (const auto& rec : trace) {
    out += std::to_string(rec.t);
    out += ',';
    out += fmt_g17(rec.alpha);
    out += ',';
    out += fmt_g17(rec.objective);
    out += ',';
    out += fmt_g17(rec.overlap);
    out += ',';
    out += std::to_string(rec.cumulative_shots);
    out += '\n';
  }
  return out;
}

json truth_json(const GroundTruth& truth) {
  json j;
  j["ground_energy"] = truth.ground_energy;
  j["degeneracy"] = truth.degeneracy();
  j["optimal_indices"] = truth.optimal_indices;
  return j;
}

ProblemFamily family_from_string(const std::string& name) {
  if (name == "maxcut") return ProblemFamily::kMaxCut;
  if (name == "numpart") return ProblemFamily::kNumberPartition;
  if (name == "portfolio") return ProblemFamily::kPortfolio;
  throw std::runtime_error("unknown problem family: " + name);
}

const char* family_to_string(ProblemFamily family) {
  switch (family) {
    case ProblemFamily::kMaxCut:
      return "maxcut";
    case ProblemFamily::kNumberPartition:
      return "numpart";
    case ProblemFamily::kPortfolio:
      return "portfolio";
  }
  return "?";
}

ScheduleKind schedule_kind_from_string(const std::string& name) {
  if (name == "constant") return ScheduleKind::kConstant;
  if (name == "linear") return ScheduleKind::kLinear;
  if (name == "sigmoid") return ScheduleKind::kSigmoid;
  if (name == "exponential") return ScheduleKind::kExponential;
  if (name == "logarithmic") return ScheduleKind::kLogarithmic;
  throw std::runtime_error("unknown schedule kind: " + name);
}

}  // namespace

std::vector<MethodSpec> default_method_roster() {
  std::vector<MethodSpec> methods;
  methods.push_back({"ascending-linear",
                     {ScheduleKind::kLinear, 0.035, 0.01, 1.0},
                     ObjectiveMode::kSampled});
  methods.push_back({"ascending-sigmoid",
                     {ScheduleKind::kSigmoid, 0.35, 0.01, 1.0},
                     ObjectiveMode::kSampled});
  for (double a : {0.1, 0.2, 0.5, 1.0}) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "constant-%g", a);
    MethodSpec m;
    m.name = buf;
    m.schedule = {ScheduleKind::kConstant, 1.0, a, a};
    m.mode = ObjectiveMode::kSampled;
    methods.push_back(std::move(m));
  }
  return methods;
}

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("experiment spec: invalid JSON: ") + e.what());
  }
  try {
    ExperimentSpec spec;
    spec.family = family_from_string(j.at("family").get<std::string>());
    spec.instance_count = j.value("instance_count", spec.instance_count);
    spec.qubits_min = j.value("qubits_min", spec.qubits_min);
    spec.qubits_max = j.value("qubits_max", spec.qubits_max);
    if (j.contains("ansatz")) {
      const std::string a = j.at("ansatz").get<std::string>();
      if (a == "hea") {
        spec.ansatz = AnsatzKind::kHardwareEfficient;
      } else if (a == "qaoa") {
        spec.ansatz = AnsatzKind::kQaoa;
      } else {
        throw std::runtime_error("unknown ansatz kind: " + a);
      }
    }
    spec.ansatz_layers = j.value("ansatz_layers", spec.ansatz_layers);
    spec.base_shots = j.value("base_shots", spec.base_shots);
    spec.budget_multiplier = j.value("budget_multiplier", spec.budget_multiplier);
    spec.success_threshold = j.value("success_threshold", spec.success_threshold);
    spec.master_seed = j.value("master_seed", spec.master_seed);
    spec.output_dir = j.value("output_dir", spec.output_dir);
    spec.threads = j.value("threads", spec.threads);
    if (j.contains("generation")) {
      const json& g = j.at("generation");
      if (g.contains("maxcut_family")) {
        const std::string f = g.at("maxcut_family").get<std::string>();
        if (f == "random") {
          spec.generation.maxcut_family = MaxCutFamily::kRandomNonRegular;
        } else if (f == "regular") {
          spec.generation.maxcut_family = MaxCutFamily::kRegular;
        } else {
          throw std::runtime_error("unknown maxcut family: " + f);
        }
      }
      spec.generation.density = g.value("density", spec.generation.density);
      spec.generation.degree = g.value("degree", spec.generation.degree);
      spec.generation.numpart_bound = g.value("numpart_bound", spec.generation.numpart_bound);
      spec.generation.risk_aversion = g.value("risk_aversion", spec.generation.risk_aversion);
    }
    for (const auto& m : j.value("methods", json::array())) {
      MethodSpec method;
      method.name = m.at("name").get<std::string>();
      method.schedule.kind = schedule_kind_from_string(m.at("kind").get<std::string>());
      method.schedule.lambda = m.value("lambda", method.schedule.lambda);
      method.schedule.alpha_cap = m.value("alpha_cap", method.schedule.alpha_cap);
      method.schedule.alpha0 = m.value(
          "alpha0", method.schedule.kind == ScheduleKind::kConstant ? method.schedule.alpha_cap
                                                                    : method.schedule.alpha0);
      const std::string mode = m.value("mode", std::string("sampled"));
      if (mode == "sampled") {
        method.mode = ObjectiveMode::kSampled;
      } else if (mode == "exact") {
        method.mode = ObjectiveMode::kExact;
      } else {
        throw std::runtime_error("unknown objective mode: " + mode);
      }
      spec.methods.push_back(std::move(method));
    }
    if (spec.methods.empty()) spec.methods = default_method_roster();
    if (spec.instance_count < 1) throw std::runtime_error("instance_count must be positive");
    if (spec.qubits_min < 1 || spec.qubits_max < spec.qubits_min) {
      throw std::runtime_error("invalid qubit range");
    }
    if (spec.ansatz_layers < 1) throw std::runtime_error("ansatz_layers must be >= 1");
    if (spec.budget_multiplier < 1) throw std::runtime_error("budget_multiplier must be >= 1");
    return spec;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("experiment spec: missing or mistyped field: ") + e.what());
  }
}

std::vector<InstanceRecord> generate_instances(const ExperimentSpec& spec) {
  std::vector<InstanceRecord> records;
  records.reserve(spec.instance_count);
  const int span = spec.qubits_max - spec.qubits_min + 1;
  for (int i = 0; i < spec.instance_count; ++i) {
    const int n = spec.qubits_min + (i % span);
    const std::uint64_t seed = mix_seed(spec.master_seed, fnv1a64("instance") ^ static_cast<std::uint64_t>(i));
    RandomSource rng(seed);
    InstanceRecord rec;
    rec.seed = seed;
    switch (spec.family) {
      case ProblemFamily::kMaxCut:
        rec.instance = generate_maxcut_instance(
            n, spec.generation.maxcut_family,
            spec.generation.maxcut_family == MaxCutFamily::kRegular
                ? static_cast<double>(spec.generation.degree)
                : spec.generation.density,
            rng);
        break;
      case ProblemFamily::kNumberPartition:
        rec.instance = generate_numpart_instance(n, spec.generation.numpart_bound, rng);
        break;
      case ProblemFamily::kPortfolio:
        rec.instance = generate_portfolio_instance(n, spec.generation.risk_aversion, rng);
        break;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

double default_tie_tolerance(const ProblemInstance& instance, const DiagonalHamiltonian& h) {
  if (std::holds_alternative<PortfolioInstance>(instance)) {
    return 1e-9 * h.max_abs_energy();
  }
  return 0.0;
}

namespace {

struct PreparedInstance {
  InstanceRecord record;
  std::shared_ptr<const DiagonalHamiltonian> hamiltonian;
  GroundTruth truth;
  Ansatz ansatz;
  std::vector<double> initial_params;
  std::uint64_t instance_hash = 0;
  std::uint64_t init_hash = 0;
  int n_qubits = 0;
};

struct RunOutcome {
  int instance = 0;
  std::string method;
  std::string trace_file;
  std::uint64_t run_seed = 0;
  bool failed = false;
  std::string error;
  double final_value = 0.0;
  double final_overlap = 0.0;
  std::size_t evaluations = 0;
  std::uint64_t cumulative_shots = 0;
  std::optional<double> norm_iters_to_threshold;
  bool success = false;
  RunTrace trace;
};

Ansatz build_ansatz(const ExperimentSpec& spec,
                    const std::shared_ptr<const DiagonalHamiltonian>& h, int n_qubits) {
  if (spec.ansatz == AnsatzKind::kHardwareEfficient) {
    return HardwareEfficientAnsatz{n_qubits, spec.ansatz_layers};
  }
  return QaoaAnsatz{h, spec.ansatz_layers};
}

// QAOA parameters live in a box: gamma in [0, gamma_max), beta in [0, pi).
std::optional<std::vector<std::array<double, 2>>> build_bounds(const ExperimentSpec& spec,
                                                               const InstanceRecord& rec,
                                                               int layers) {
  if (spec.ansatz != AnsatzKind::kQaoa) return std::nullopt;
  double gamma_max = 2.0 * std::numbers::pi;
  if (const auto* np = std::get_if<NumberPartitionInstance>(&rec.instance)) {
    gamma_max = qaoa_gamma_bound(*np);
  }
  std::vector<std::array<double, 2>> bounds;
  for (int l = 0; l < layers; ++l) {
    bounds.push_back({0.0, gamma_max});
    bounds.push_back({0.0, std::numbers::pi});
  }
  return bounds;
}

// All methods on an instance share one uniform draw; bounded parameters are
// rescaled from [0, 2*pi) into their box so the draw count stays identical.
std::vector<double> map_into_bounds(std::vector<double> params,
                                    const std::optional<std::vector<std::array<double, 2>>>& bounds) {
  if (!bounds) return params;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& [lo, hi] = (*bounds)[i];
    params[i] = lo + params[i] / (2.0 * std::numbers::pi) * (hi - lo);
  }
  return params;
}

}  // namespace

int run_experiment(const ExperimentSpec& spec) {
  const fs::path out_dir(spec.output_dir);
  fs::create_directories(out_dir);

  const std::vector<InstanceRecord> records = generate_instances(spec);

  std::vector<PreparedInstance> prepared;
  prepared.reserve(records.size());
  for (int i = 0; i < static_cast<int>(records.size()); ++i) {
    PreparedInstance p;
    p.record = records[i];
    p.n_qubits = instance_qubits(p.record.instance);
    p.hamiltonian =
        std::make_shared<const DiagonalHamiltonian>(instance_hamiltonian(p.record.instance));
    p.truth = brute_force_ground(*p.hamiltonian,
                                 default_tie_tolerance(p.record.instance, *p.hamiltonian));
    p.ansatz = build_ansatz(spec, p.hamiltonian, p.n_qubits);
    const auto bounds = build_bounds(spec, p.record, spec.ansatz_layers);
    RandomSource init_rng(mix_seed(spec.master_seed, fnv1a64("init") ^ static_cast<std::uint64_t>(i)));
    p.initial_params = map_into_bounds(
        random_initial_params(static_cast<std::size_t>(param_count(p.ansatz)), init_rng), bounds);
    const std::string instance_text = serialize_instance(p.record);
    p.instance_hash = fnv1a64(instance_text);
    p.init_hash = param_hash(p.initial_params);

    write_file_atomic(out_dir / ("instance_" + instance_tag(i) + ".json"), instance_text);
    write_file_atomic(out_dir / ("truth_" + instance_tag(i) + ".json"),
                      truth_json(p.truth).dump(2) + "\n");
    prepared.push_back(std::move(p));
  }

  struct Task {
    int instance;
    int method;
  };
  std::vector<Task> tasks;
  for (int i = 0; i < static_cast<int>(prepared.size()); ++i) {
    for (int m = 0; m < static_cast<int>(spec.methods.size()); ++m) tasks.push_back({i, m});
  }
  std::vector<RunOutcome> outcomes(tasks.size());

  auto run_task = [&](const Task& task, RunOutcome& outcome) {
    const PreparedInstance& p = prepared[task.instance];
    const MethodSpec& method = spec.methods[task.method];
    outcome.instance = task.instance;
    outcome.method = method.name;
    outcome.run_seed = mix_seed(spec.master_seed,
                                fnv1a64(method.name) ^ (static_cast<std::uint64_t>(task.instance) << 20));
    const std::string trace_name =
        "trace_" + instance_tag(task.instance) + "_" + sanitize_name(method.name) + ".csv";
    outcome.trace_file = trace_name;
    try {
      const int params = param_count(p.ansatz);
      OptimizerConfig opt;
      opt.max_evaluations = static_cast<std::size_t>(spec.budget_multiplier) * params;
      opt.bounds = build_bounds(spec, p.record, spec.ansatz_layers);
      ObjectiveSpec objective;
      objective.base_shots = spec.base_shots;
      objective.mode = method.mode;
      AscendingRunOptions options;
      options.truth = p.truth;
      RandomSource rng(outcome.run_seed);
      AscendingRunResult result = run_ascending_cvar(p.ansatz, *p.hamiltonian, method.schedule,
                                                     objective, opt, p.initial_params, rng, options);
      outcome.final_value = result.final_value;
      outcome.final_overlap = result.final_overlap;
      outcome.evaluations = result.trace.size();
      outcome.cumulative_shots = result.trace.empty() ? 0 : result.trace.back().cumulative_shots;
      outcome.norm_iters_to_threshold =
          iterations_to_threshold(result.trace, spec.success_threshold, params);
      outcome.success = outcome.norm_iters_to_threshold.has_value();
      outcome.trace = std::move(result.trace);
      write_file_atomic(out_dir / trace_name, trace_csv(outcome.trace));
    } catch (const std::exception& e) {
      outcome.failed = true;
      outcome.error = e.what();
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads =
      spec.threads > 0 ? static_cast<unsigned>(spec.threads) : hw;
  if (n_threads <= 1 || tasks.size() <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run_task(tasks[t], outcomes[t]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < std::min<std::size_t>(n_threads, tasks.size()); ++w) {
      workers.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
          run_task(tasks[t], outcomes[t]);
        }
      });
    }
    for (auto& th : workers) th.join();
  }

  // Sequential reduce: manifest + summary in deterministic task order.
  json manifest;
  manifest["family"] = family_to_string(spec.family);
  manifest["master_seed"] = spec.master_seed;
  manifest["success_threshold"] = spec.success_threshold;
  manifest["budget_multiplier"] = spec.budget_multiplier;
  manifest["base_shots"] = spec.base_shots;
  json runs = json::array();
  std::vector<RunRecord> run_records;
  bool any_failed = false;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const RunOutcome& o = outcomes[t];
    const PreparedInstance& p = prepared[o.instance];
    json row;
    row["instance"] = o.instance;
    row["method"] = o.method;
    row["n_qubits"] = p.n_qubits;
    row["param_count"] = param_count(p.ansatz);
    row["run_seed"] = o.run_seed;
    row["instance_hash"] = p.instance_hash;
    row["init_hash"] = p.init_hash;
    if (o.failed) {
      any_failed = true;
      row["error"] = o.error;
    } else {
      row["trace_file"] = o.trace_file;
      row["evaluations"] = o.evaluations;
      row["final_value"] = o.final_value;
      row["final_overlap"] = o.final_overlap;
      row["success"] = o.success;
      if (o.norm_iters_to_threshold) {
        row["norm_iters_to_threshold"] = *o.norm_iters_to_threshold;
      } else {
        row["norm_iters_to_threshold"] = nullptr;
      }
      row["cumulative_shots"] = o.cumulative_shots;
      RunRecord rec;
      rec.method = o.method;
      rec.param_count = static_cast<std::size_t>(param_count(p.ansatz));
      rec.final_overlap = o.final_overlap;
      rec.trace = o.trace;
      run_records.push_back(std::move(rec));
    }
    runs.push_back(std::move(row));
  }
  manifest["runs"] = std::move(runs);
  write_file_atomic(out_dir / "runs.json", manifest.dump(2) + "\n");

  const std::vector<SummaryRow> summary = summarize(run_records, spec.success_threshold);
  std::string csv = "method,runs,successful,avg_overlap_pct,avg_overlap_successful_pct,avg_norm_iters\n";
  for (const auto& row : summary) {
    csv += row.method;
    csv += ',';
    csv += std::to_string(row.runs);
    csv += ',';
    csv += std::to_string(row.successful);
    csv += ',';
    csv += fmt_f4(row.avg_overlap_pct);
    csv += ',';
    csv += fmt_f4(row.avg_overlap_successful_pct);
    csv += ',';
    csv += row.avg_norm_iters ? fmt_f4(*row.avg_norm_iters) : std::string();
    csv += '\n';
  }
  write_file_atomic(out_dir / "summary.csv", csv);

  return any_failed ? 1 : 0;
}

int emit_landscape(const InstanceRecord& record, const LandscapeRequest& request) {
  if (request.alphas.empty()) throw std::invalid_argument("landscape: no alphas given");
  if (request.resolution < 2) throw std::invalid_argument("landscape: resolution must be >= 2");
  const fs::path out_dir(request.output_dir);
  fs::create_directories(out_dir);

  auto hamiltonian =
      std::make_shared<const DiagonalHamiltonian>(instance_hamiltonian(record.instance));
  const GroundTruth truth =
      brute_force_ground(*hamiltonian, default_tie_tolerance(record.instance, *hamiltonian));
  const QaoaAnsatz ansatz{hamiltonian, 1};

  double gamma_max = 2.0 * std::numbers::pi;
  if (const auto* np = std::get_if<NumberPartitionInstance>(&record.instance)) {
    gamma_max = qaoa_gamma_bound(*np);
  }
  const double beta_max = std::numbers::pi;
  const int res = request.resolution;

  struct GridStats {
    std::string file;
    double min_cvar = 0.0;
    double argmin_gamma = 0.0;
    double argmin_beta = 0.0;
  };
  std::vector<std::string> grids(request.alphas.size(),
                                 "gamma,beta,cvar\n");
  std::vector<GridStats> stats(request.alphas.size());
  for (auto& s : stats) s.min_cvar = std::numeric_limits<double>::infinity();
  double max_ground_mass = 0.0;

  for (int gi = 0; gi < res; ++gi) {
    const double gamma = gamma_max * gi / res;
    for (int bi = 0; bi < res; ++bi) {
      const double beta = beta_max * bi / res;
      const double params[2] = {gamma, beta};
      const StateVector state = qaoa_prepare(ansatz, params);
      max_ground_mass = std::max(max_ground_mass, overlap(state, truth));
      for (std::size_t a = 0; a < request.alphas.size(); ++a) {
        const double value = exact_cvar(state, *hamiltonian, request.alphas[a]);
        grids[a] += fmt_g17(gamma);
        grids[a] += ',';
        grids[a] += fmt_g17(beta);
        grids[a] += ',';
        grids[a] += fmt_g17(value);
        grids[a] += '\n';
        if (value < stats[a].min_cvar) {
          stats[a] = {stats[a].file, value, gamma, beta};
        }
      }
    }
  }

  json meta;
  meta["resolution"] = res;
  meta["gamma_max"] = gamma_max;
  meta["beta_max"] = beta_max;
  meta["ground_energy"] = truth.ground_energy;
  meta["degeneracy"] = truth.degeneracy();
  // Best ground-state mass any grid point reaches; CVaR grids can only share
  // the ground energy as their minimum for alphas at or below this value.
  meta["max_ground_state_mass"] = max_ground_mass;
  json grid_meta = json::array();
  for (std::size_t a = 0; a < request.alphas.size(); ++a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "landscape_a%g.csv", request.alphas[a]);
    stats[a].file = buf;
    write_file_atomic(out_dir / buf, grids[a]);
    json g;
    g["alpha"] = request.alphas[a];
    g["file"] = stats[a].file;
    g["min_cvar"] = stats[a].min_cvar;
    g["argmin_gamma"] = stats[a].argmin_gamma;
    g["argmin_beta"] = stats[a].argmin_beta;
    grid_meta.push_back(std::move(g));
  }
  meta["grids"] = std::move(grid_meta);
  write_file_atomic(out_dir / "landscape_meta.json", meta.dump(2) + "\n");
  return 0;
}

int emit_plot_data(const std::string& run_dir) {
  const fs::path dir(run_dir);
  const json manifest = json::parse(read_file(dir / "runs.json"));
  for (const auto& row : manifest.at("runs")) {
    if (row.contains("error")) continue;
    const std::string trace_file = row.at("trace_file").get<std::string>();
    const std::size_t params = row.at("param_count").get<std::size_t>();
    const std::string text = read_file(dir / trace_file);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);  // header
    std::string stem = trace_file;
    if (stem.starts_with("trace_")) stem = stem.substr(6);
    if (stem.ends_with(".csv")) stem = stem.substr(0, stem.size() - 4);
    std::string norm_csv = "normalized_iteration,overlap\n";
    std::string shots_csv = "cumulative_shots,overlap\n";
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      // columns: t,alpha,objective,overlap,cumulative_shots
      std::array<std::string, 5> cols;
      std::size_t start = 0;
      for (int c = 0; c < 5; ++c) {
        const std::size_t comma = line.find(',', start);
        cols[c] = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      // x-axis counts completed evaluations, so the t-th record sits at t+1.
      const double t = std::stod(cols[0]);
      norm_csv += fmt_g17((t + 1.0) / static_cast<double>(params));
      norm_csv += ',';
      norm_csv += cols[3];
      norm_csv += '\n';
      shots_csv += cols[4];
      shots_csv += ',';
      shots_csv += cols[3];
      shots_csv += '\n';
    }
    write_file_atomic(dir / ("plot_norm_" + stem + ".csv"), norm_csv);
    write_file_atomic(dir / ("plot_shots_" + stem + ".csv"), shots_csv);
  }
  return 0;
}

}  // namespace tailopt
