// Command-line driver: run benchmark experiments, render CVaR landscapes,
// and emit plot-ready curves from completed runs.
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tailopt/harness.hpp"

namespace {

std::string read_file_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Precedence: --out flag > TAILOPT_OUT_DIR > value embedded in the spec.
void apply_out_dir(std::string& target, const std::string& flag_value) {
  if (!flag_value.empty()) {
    target = flag_value;
    return;
  }
  if (const char* env = std::getenv("TAILOPT_OUT_DIR")) {
    if (*env) target = env;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational tail-risk optimization benchmark driver"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir_flag;
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  int threads_override = -1;

  CLI::App* run = app.add_subcommand("run", "Run an experiment described by a JSON spec");
  run->add_option("--spec", spec_path, "experiment spec JSON file")->required();
  run->add_option("--out", out_dir_flag, "output directory (overrides spec and TAILOPT_OUT_DIR)");
  run->add_option("--seed", seed_override, "master seed override")
      ->each([&](const std::string&) { seed_given = true; });
  run->add_option("--threads", threads_override, "worker thread count (0 = hardware)");

  CLI::App* gen = app.add_subcommand("gen-instances", "Write the instance files for a spec");
  gen->add_option("--spec", spec_path, "experiment spec JSON file")->required();
  gen->add_option("--out", out_dir_flag, "output directory");

  std::string instance_path;
  std::vector<double> alphas;
  int resolution = 50;
  CLI::App* land = app.add_subcommand("landscape", "CVaR landscape of a 1-layer QAOA circuit");
  land->add_option("--instance", instance_path, "instance JSON file")->required();
  land->add_option("--alphas", alphas, "CVaR tail fractions")->required()->expected(-1);
  land->add_option("--resolution", resolution, "grid points per axis")->capture_default_str();
  land->add_option("--out", out_dir_flag, "output directory");

  std::string run_dir;
  CLI::App* plots = app.add_subcommand("plots", "Emit plot curves for a completed run directory");
  plots->add_option("--dir", run_dir, "experiment output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed() || gen->parsed()) {
      tailopt::ExperimentSpec spec = tailopt::parse_experiment_spec(read_file_or_throw(spec_path));
      apply_out_dir(spec.output_dir, out_dir_flag);
      if (seed_given) spec.master_seed = seed_override;
      if (threads_override >= 0) spec.threads = threads_override;
      if (gen->parsed()) {
        namespace fs = std::filesystem;
        fs::create_directories(spec.output_dir);
        const auto records = tailopt::generate_instances(spec);
        for (std::size_t i = 0; i < records.size(); ++i) {
          char name[32];
          std::snprintf(name, sizeof name, "instance_i%02zu.json", i);
          std::ofstream out(fs::path(spec.output_dir) / name, std::ios::binary | std::ios::trunc);
          out << tailopt::serialize_instance(records[i]);
        }
        std::cout << records.size() << " instances written to " << spec.output_dir << "\n";
        return 0;
      }
      const int rc = tailopt::run_experiment(spec);
      std::cout << (rc == 0 ? "experiment complete: " : "experiment finished with failures: ")
                << spec.output_dir << "\n";
      return rc;
    }
    if (land->parsed()) {
      tailopt::InstanceRecord record = tailopt::parse_instance(read_file_or_throw(instance_path));
      tailopt::LandscapeRequest request;
      request.alphas = alphas;
      request.resolution = resolution;
      request.output_dir = "out";
      apply_out_dir(request.output_dir, out_dir_flag);
      const int rc = tailopt::emit_landscape(record, request);
      std::cout << "landscape written to " << request.output_dir << "\n";
      return rc;
    }
    if (plots->parsed()) {
      const int rc = tailopt::emit_plot_data(run_dir);
      std::cout << "plot curves written to " << run_dir << "\n";
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
