#pragma once

#include <string>
#include <variant>

#include "tailopt/problems.hpp"

namespace tailopt {

using ProblemInstance = std::variant<MaxCutInstance, NumberPartitionInstance, PortfolioInstance>;

// Instance plus the seed it was generated from, as stored on disk.
struct InstanceRecord {
  ProblemInstance instance;
  std::uint64_t seed = 0;
};

int instance_qubits(const ProblemInstance& instance);
DiagonalHamiltonian instance_hamiltonian(const ProblemInstance& instance);
const char* instance_type_name(const ProblemInstance& instance);

// JSON text with fields {"type", "n", <payload>, "seed"}.  parse_instance is
// the exact inverse: integers round-trip bit-exactly and reals print with
// full precision.  Throws std::runtime_error on malformed input.
std::string serialize_instance(const InstanceRecord& record);
InstanceRecord parse_instance(const std::string& json_text);

}  // namespace tailopt
