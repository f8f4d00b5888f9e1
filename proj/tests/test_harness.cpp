#include "tailopt/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "tailopt/ansatz.hpp"
#include "tailopt/random.hpp"

using namespace tailopt;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += (c == '\n');
  return n;
}

fs::path fresh_dir(const std::string& stem) {
  const fs::path p = fs::temp_directory_path() / ("tailopt_test_" + stem);
  fs::remove_all(p);
  return p;
}

// Two instances, two cheap exact-mode methods: small enough to run in
// milliseconds yet exercising the full pipeline.
ExperimentSpec tiny_spec(const fs::path& out) {
  ExperimentSpec spec;
  spec.family = ProblemFamily::kMaxCut;
  spec.generation.density = 0.6;
  spec.instance_count = 2;
  spec.qubits_min = 4;
  spec.qubits_max = 5;
  spec.ansatz = AnsatzKind::kHardwareEfficient;
  spec.ansatz_layers = 1;
  spec.budget_multiplier = 10;
  spec.master_seed = 99;
  spec.output_dir = out.string();
  spec.threads = 1;

  MethodSpec ramp;
  ramp.name = "ascending-linear";
  ramp.schedule.kind = ScheduleKind::kLinear;
  ramp.schedule.lambda = 0.25;
  ramp.schedule.alpha0 = 0.25;
  ramp.schedule.alpha_cap = 1.0;
  ramp.mode = ObjectiveMode::kExact;

  MethodSpec flat;
  flat.name = "constant-1";
  flat.schedule.kind = ScheduleKind::kConstant;
  flat.schedule.alpha0 = 1.0;
  flat.schedule.alpha_cap = 1.0;
  flat.mode = ObjectiveMode::kExact;

  spec.methods = {ramp, flat};
  return spec;
}

}  // namespace

TEST_CASE("parse_experiment_spec fills defaults") {
  const ExperimentSpec spec = parse_experiment_spec(R"({"family": "numpart"})");
  CHECK(spec.family == ProblemFamily::kNumberPartition);
  CHECK(spec.instance_count == 20);
  CHECK(spec.qubits_min == 10);
  CHECK(spec.qubits_max == 12);
  CHECK(spec.ansatz == AnsatzKind::kHardwareEfficient);
  CHECK(spec.ansatz_layers == 1);
  CHECK(spec.base_shots == 1000);
  CHECK(spec.budget_multiplier == 66);
  CHECK(spec.success_threshold == 0.10);
  CHECK(spec.master_seed == 1);
  CHECK(spec.generation.numpart_bound == 500);
  // Empty methods select the default roster.
  CHECK(spec.methods.size() == default_method_roster().size());
}

TEST_CASE("parse_experiment_spec reads methods and generation settings") {
  const ExperimentSpec spec = parse_experiment_spec(R"({
    "family": "portfolio",
    "qubits_min": 8, "qubits_max": 8,
    "generation": {"risk_aversion": 0.7},
    "methods": [
      {"name": "ramp", "kind": "linear", "lambda": 0.05, "alpha0": 0.02},
      {"name": "flat", "kind": "constant", "alpha_cap": 0.2, "mode": "exact"}
    ]
  })");
  CHECK(spec.family == ProblemFamily::kPortfolio);
  CHECK(spec.generation.risk_aversion == 0.7);
  REQUIRE(spec.methods.size() == 2);
  CHECK(spec.methods[0].schedule.kind == ScheduleKind::kLinear);
  CHECK(spec.methods[0].schedule.lambda == 0.05);
  CHECK(spec.methods[0].schedule.alpha0 == 0.02);
  CHECK(spec.methods[0].schedule.alpha_cap == 1.0);
  CHECK(spec.methods[0].mode == ObjectiveMode::kSampled);
  // Constant methods default alpha0 to the cap.
  CHECK(spec.methods[1].schedule.kind == ScheduleKind::kConstant);
  CHECK(spec.methods[1].schedule.alpha0 == 0.2);
  CHECK(spec.methods[1].schedule.alpha_cap == 0.2);
  CHECK(spec.methods[1].mode == ObjectiveMode::kExact);
}

TEST_CASE("parse_experiment_spec rejects malformed input") {
  CHECK_THROWS_AS(parse_experiment_spec("not json"), std::runtime_error);
  CHECK_THROWS_AS(parse_experiment_spec("{}"), std::runtime_error);  // family required
  CHECK_THROWS_AS(parse_experiment_spec(R"({"family": "chess"})"), std::runtime_error);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"family": "maxcut", "instance_count": 0})"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"family": "maxcut", "qubits_min": 9, "qubits_max": 8})"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"family": "maxcut", "ansatz": "vqe"})"),
                  std::runtime_error);
  CHECK_THROWS_AS(
      parse_experiment_spec(R"({"family": "maxcut", "methods": [{"name": "x", "kind": "cubic"}]})"),
      std::runtime_error);
}

TEST_CASE("default roster pairs the two ramps with four constant baselines") {
  const auto roster = default_method_roster();
  REQUIRE(roster.size() == 6);
  CHECK(roster[0].name == "ascending-linear");
  CHECK(roster[0].schedule.kind == ScheduleKind::kLinear);
  CHECK(roster[0].schedule.lambda == 0.035);
  CHECK(roster[0].schedule.alpha0 == 0.01);
  CHECK(roster[0].schedule.alpha_cap == 1.0);
  CHECK(roster[1].name == "ascending-sigmoid");
  CHECK(roster[1].schedule.kind == ScheduleKind::kSigmoid);
  CHECK(roster[1].schedule.lambda == 0.35);
  const std::vector<double> caps{0.1, 0.2, 0.5, 1.0};
  const std::vector<std::string> names{"constant-0.1", "constant-0.2", "constant-0.5",
                                       "constant-1"};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(roster[2 + i].name == names[i]);
    CHECK(roster[2 + i].schedule.kind == ScheduleKind::kConstant);
    CHECK(roster[2 + i].schedule.alpha_cap == caps[i]);
    CHECK(roster[2 + i].schedule.alpha0 == caps[i]);
  }
  for (const auto& m : roster) CHECK(m.mode == ObjectiveMode::kSampled);
}

TEST_CASE("generate_instances cycles sizes and is deterministic") {
  ExperimentSpec spec;
  spec.family = ProblemFamily::kNumberPartition;
  spec.instance_count = 5;
  spec.qubits_min = 4;
  spec.qubits_max = 6;
  spec.master_seed = 7;
  const auto a = generate_instances(spec);
  REQUIRE(a.size() == 5);
  CHECK(instance_qubits(a[0].instance) == 4);
  CHECK(instance_qubits(a[1].instance) == 5);
  CHECK(instance_qubits(a[2].instance) == 6);
  CHECK(instance_qubits(a[3].instance) == 4);
  CHECK(instance_qubits(a[4].instance) == 5);

  const auto b = generate_instances(spec);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(serialize_instance(a[i]) == serialize_instance(b[i]));
  }
  // Distinct instances come from distinct derived seeds.
  CHECK(a[0].seed != a[3].seed);
  CHECK(serialize_instance(a[0]) != serialize_instance(a[3]));

  spec.master_seed = 8;
  const auto c = generate_instances(spec);
  CHECK(serialize_instance(a[0]) != serialize_instance(c[0]));
}

TEST_CASE("run_experiment writes the full artifact set") {
  const fs::path out = fresh_dir("run");
  const ExperimentSpec spec = tiny_spec(out);
  REQUIRE(run_experiment(spec) == 0);

  for (const char* name :
       {"instance_i00.json", "instance_i01.json", "truth_i00.json", "truth_i01.json",
        "trace_i00_ascending-linear.csv", "trace_i00_constant-1.csv",
        "trace_i01_ascending-linear.csv", "trace_i01_constant-1.csv", "runs.json",
        "summary.csv"}) {
    CAPTURE(name);
    CHECK(fs::exists(out / name));
  }

  // Instances on disk parse back and match the generator.
  const auto originals = generate_instances(spec);
  const InstanceRecord i0 = parse_instance(slurp(out / "instance_i00.json"));
  CHECK(serialize_instance(i0) == serialize_instance(originals[0]));

  // Ground-truth files carry the brute-force result.
  const json truth = json::parse(slurp(out / "truth_i00.json"));
  const GroundTruth bf = brute_force_ground(instance_hamiltonian(originals[0].instance));
  CHECK(truth.at("ground_energy").get<double>() == bf.ground_energy);
  CHECK(truth.at("degeneracy").get<std::size_t>() == bf.degeneracy());
  CHECK(truth.at("optimal_indices").get<std::vector<std::uint64_t>>() == bf.optimal_indices);

  const json manifest = json::parse(slurp(out / "runs.json"));
  CHECK(manifest.at("family").get<std::string>() == "maxcut");
  CHECK(manifest.at("master_seed").get<std::uint64_t>() == 99);
  const auto& runs = manifest.at("runs");
  REQUIRE(runs.size() == 4);

  std::map<int, std::vector<json>> by_instance;
  for (const auto& r : runs) {
    CHECK(r.at("final_value").is_number());
    CHECK(r.at("final_overlap").get<double>() >= 0.0);
    CHECK(r.at("final_overlap").get<double>() <= 1.0);
    const std::string trace_file = r.at("trace_file").get<std::string>();
    const std::string trace = slurp(out / trace_file);
    CHECK(trace.rfind("t,alpha,objective,overlap,cumulative_shots\n", 0) == 0);
    CHECK(line_count(trace) == r.at("evaluations").get<std::size_t>() + 1);  // +header
    // Exact-mode methods use no shots.
    CHECK(r.at("cumulative_shots").get<std::uint64_t>() == 0);
    by_instance[r.at("instance").get<int>()].push_back(r);
  }
  // Fair comparison: both methods saw the same instance and the same start.
  for (const auto& [idx, group] : by_instance) {
    REQUIRE(group.size() == 2);
    CHECK(group[0].at("instance_hash") == group[1].at("instance_hash"));
    CHECK(group[0].at("init_hash") == group[1].at("init_hash"));
    CHECK(group[0].at("run_seed") != group[1].at("run_seed"));
  }

  const std::string summary = slurp(out / "summary.csv");
  CHECK(summary.rfind(
            "method,runs,successful,avg_overlap_pct,avg_overlap_successful_pct,avg_norm_iters\n",
            0) == 0);
  CHECK(line_count(summary) == 3);  // header + one row per method
}

TEST_CASE("run_experiment reruns byte-identically") {
  const fs::path out_a = fresh_dir("rerun_a");
  const fs::path out_b = fresh_dir("rerun_b");
  ExperimentSpec spec = tiny_spec(out_a);
  REQUIRE(run_experiment(spec) == 0);
  spec.output_dir = out_b.string();
  REQUIRE(run_experiment(spec) == 0);

  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(out_a)) {
    const fs::path rel = entry.path().filename();
    CAPTURE(rel.string());
    REQUIRE(fs::exists(out_b / rel));
    CHECK(slurp(entry.path()) == slurp(out_b / rel));
    ++compared;
  }
  CHECK(compared >= 10);
}

TEST_CASE("sampled runs account shots in the manifest") {
  const fs::path out = fresh_dir("shots");
  ExperimentSpec spec = tiny_spec(out);
  spec.instance_count = 1;
  spec.qubits_min = 4;
  spec.qubits_max = 4;
  spec.base_shots = 50;
  spec.methods[0].mode = ObjectiveMode::kSampled;
  spec.methods.resize(1);
  REQUIRE(run_experiment(spec) == 0);
  const json manifest = json::parse(slurp(out / "runs.json"));
  const auto& run = manifest.at("runs").at(0);
  CHECK(run.at("cumulative_shots").get<std::uint64_t>() > 0);
  // The manifest's count equals the last trace record's cumulative count.
  const std::string trace = slurp(out / run.at("trace_file").get<std::string>());
  const std::size_t last_nl = trace.find_last_of('\n', trace.size() - 2);
  const std::string last_line = trace.substr(last_nl + 1);
  const std::size_t last_comma = last_line.find_last_of(',');
  CHECK(std::stoull(last_line.substr(last_comma + 1)) ==
        run.at("cumulative_shots").get<std::uint64_t>());
}

TEST_CASE("emit_landscape grids the single-layer mixer angles") {
  RandomSource rng(2024);
  InstanceRecord record;
  record.instance = NumberPartitionInstance{{3, 1, 2}};
  record.seed = 0;

  const fs::path out = fresh_dir("landscape");
  LandscapeRequest req;
  req.alphas = {0.1, 1.0};
  req.resolution = 6;
  req.output_dir = out.string();
  REQUIRE(emit_landscape(record, req) == 0);

  const json meta = json::parse(slurp(out / "landscape_meta.json"));
  CHECK(meta.at("resolution").get<int>() == 6);
  // Two smallest numbers are 1 and 2, so the useful phase range is 2*pi/2.
  CHECK(meta.at("gamma_max").get<double>() ==
        doctest::Approx(qaoa_gamma_bound(NumberPartitionInstance{{3, 1, 2}})));
  CHECK(meta.at("beta_max").get<double>() == doctest::Approx(std::numbers::pi));
  CHECK(meta.at("ground_energy").get<double>() == 0.0);
  CHECK(meta.at("degeneracy").get<int>() == 2);
  const double mass = meta.at("max_ground_state_mass").get<double>();
  CHECK(mass > 0.0);
  CHECK(mass <= 1.0);

  REQUIRE(meta.at("grids").size() == 2);
  for (const auto& g : meta.at("grids")) {
    const std::string file = g.at("file").get<std::string>();
    const std::string csv = slurp(out / file);
    CHECK(csv.rfind("gamma,beta,cvar\n", 0) == 0);
    CHECK(line_count(csv) == 36 + 1);
    CHECK(g.at("min_cvar").get<double>() >= 0.0 - 1e-9);  // never below the ground energy
  }
  CHECK(meta.at("grids").at(0).at("alpha").get<double>() == 0.1);
  CHECK(fs::exists(out / "landscape_a0.1.csv"));
  CHECK(fs::exists(out / "landscape_a1.csv"));
}

TEST_CASE("landscape obeys the angle mirror symmetry of integer spectra") {
  InstanceRecord record;
  record.instance = MaxCutInstance{2, {{0, 1, 1.0}}};
  record.seed = 0;

  const fs::path out = fresh_dir("mirror");
  LandscapeRequest req;
  req.alphas = {1.0};
  req.resolution = 8;
  req.output_dir = out.string();
  REQUIRE(emit_landscape(record, req) == 0);

  // Parse the grid back into a res x res table.
  const std::string csv = slurp(out / "landscape_a1.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> grid(8, std::vector<double>(8, 0.0));
  std::size_t row = 0;
  while (std::getline(in, line)) {
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    grid[row / 8][row % 8] = std::stod(line.substr(c2 + 1));
    ++row;
  }
  REQUIRE(row == 64);

  // With integer energies the state at (2*pi - gamma, pi - beta) has the
  // same measurement distribution, so mirrored grid cells match.
  for (std::size_t i = 1; i < 8; ++i) {
    for (std::size_t j = 1; j < 8; ++j) {
      CHECK(grid[i][j] == doctest::Approx(grid[8 - i][8 - j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("emit_plot_data rescales traces to normalized iterations") {
  const fs::path out = fresh_dir("plots");
  const ExperimentSpec spec = tiny_spec(out);
  REQUIRE(run_experiment(spec) == 0);
  REQUIRE(emit_plot_data(out.string()) == 0);

  const json manifest = json::parse(slurp(out / "runs.json"));
  for (const auto& r : manifest.at("runs")) {
    const std::string trace_file = r.at("trace_file").get<std::string>();
    const std::string stem = fs::path(trace_file).stem().string();
    const fs::path norm = out / ("plot_norm_" + stem.substr(std::string("trace_").size()) + ".csv");
    const fs::path shots = out / ("plot_shots_" + stem.substr(std::string("trace_").size()) + ".csv");
    CAPTURE(norm.string());
    REQUIRE(fs::exists(norm));
    REQUIRE(fs::exists(shots));

    const std::string norm_csv = slurp(norm);
    CHECK(norm_csv.rfind("normalized_iteration,overlap\n", 0) == 0);
    const std::size_t evals = r.at("evaluations").get<std::size_t>();
    CHECK(line_count(norm_csv) == evals + 1);

    // Final row's x equals evaluations / params: work done including the
    // current evaluation, in parameter-count units.
    const std::size_t params = r.at("param_count").get<std::size_t>();
    const std::size_t last_nl = norm_csv.find_last_of('\n', norm_csv.size() - 2);
    const std::string last_line = norm_csv.substr(last_nl + 1);
    const double last_x = std::stod(last_line.substr(0, last_line.find(',')));
    CHECK(last_x == doctest::Approx(static_cast<double>(evals) / static_cast<double>(params)));

    const std::string shots_csv = slurp(shots);
    CHECK(shots_csv.rfind("cumulative_shots,overlap\n", 0) == 0);
    CHECK(line_count(shots_csv) == evals + 1);
  }
}

TEST_CASE("default tie tolerance is zero for integer families") {
  RandomSource rng(31337);
  const MaxCutInstance mc = generate_maxcut_instance(5, MaxCutFamily::kRandomNonRegular, 0.5, rng);
  CHECK(default_tie_tolerance(ProblemInstance{mc}, maxcut_hamiltonian(mc)) == 0.0);

  const NumberPartitionInstance np = generate_numpart_instance(5, 50, rng);
  CHECK(default_tie_tolerance(ProblemInstance{np}, numpart_hamiltonian(np)) == 0.0);

  const PortfolioInstance pf = generate_portfolio_instance(5, 0.5, rng);
  const DiagonalHamiltonian h = portfolio_hamiltonian(pf);
  CHECK(default_tie_tolerance(ProblemInstance{pf}, h) ==
        doctest::Approx(1e-9 * h.max_abs_energy()).epsilon(1e-12));
}
