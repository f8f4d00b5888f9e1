#include "tailopt/instance_io.hpp"

#include <stdexcept>

#include "json.hpp"

namespace tailopt {

namespace {

using nlohmann::json;

json matrix_to_json(const SquareMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

SquareMatrix matrix_from_json(const json& rows) {
  const int n = static_cast<int>(rows.size());
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (static_cast<int>(row.size()) != n) throw std::runtime_error("matrix rows must be square");
    for (int j = 0; j < n; ++j) m.at(i, j) = row.at(j).get<double>();
  }
  return m;
}

}  // namespace

int instance_qubits(const ProblemInstance& instance) {
  return std::visit(
      [](const auto& inst) -> int {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, MaxCutInstance>) {
          return inst.n_vertices;
        } else if constexpr (std::is_same_v<T, NumberPartitionInstance>) {
          return static_cast<int>(inst.numbers.size());
        } else {
          return static_cast<int>(inst.returns.size());
        }
      },
      instance);
}

DiagonalHamiltonian instance_hamiltonian(const ProblemInstance& instance) {
  return std::visit(
      [](const auto& inst) -> DiagonalHamiltonian {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, MaxCutInstance>) {
          return maxcut_hamiltonian(inst);
        } else if constexpr (std::is_same_v<T, NumberPartitionInstance>) {
          return numpart_hamiltonian(inst);
        } else {
          return portfolio_hamiltonian(inst);
        }
      },
      instance);
}

const char* instance_type_name(const ProblemInstance& instance) {
  return std::visit(
      [](const auto& inst) -> const char* {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, MaxCutInstance>) {
          return "maxcut";
        } else if constexpr (std::is_same_v<T, NumberPartitionInstance>) {
          return "numpart";
        } else {
          return "portfolio";
        }
        (void)inst;
      },
      instance);
}

std::string serialize_instance(const InstanceRecord& record) {
  json j;
  j["type"] = instance_type_name(record.instance);
  j["n"] = instance_qubits(record.instance);
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, MaxCutInstance>) {
          json edges = json::array();
          for (const auto& e : inst.edges) edges.push_back(json::array({e.a, e.b, e.weight}));
          j["edges"] = std::move(edges);
        } else if constexpr (std::is_same_v<T, NumberPartitionInstance>) {
          j["numbers"] = inst.numbers;
        } else {
          j["returns"] = inst.returns;
          j["covariance"] = matrix_to_json(inst.covariance);
          j["risk_aversion"] = inst.risk_aversion;
          j["budget"] = inst.budget;
          j["penalty_weight"] = inst.penalty_weight;
        }
      },
      record.instance);
  j["seed"] = record.seed;
  return j.dump(2);
}

InstanceRecord parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("instance parse: invalid JSON: ") + e.what());
  }
  try {
    InstanceRecord record;
    const std::string type = j.at("type").get<std::string>();
    const int n = j.at("n").get<int>();
    if (type == "maxcut") {
      MaxCutInstance inst;
      inst.n_vertices = n;
      for (const auto& e : j.at("edges")) {
        if (e.size() != 3) throw std::runtime_error("edge entries must be [a, b, weight]");
        inst.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
      }
      record.instance = std::move(inst);
    } else if (type == "numpart") {
      NumberPartitionInstance inst;
      inst.numbers = j.at("numbers").get<std::vector<std::int64_t>>();
      if (static_cast<int>(inst.numbers.size()) != n) {
        throw std::runtime_error("numbers length does not match n");
      }
      record.instance = std::move(inst);
    } else if (type == "portfolio") {
      PortfolioInstance inst;
      inst.returns = j.at("returns").get<std::vector<double>>();
      inst.covariance = matrix_from_json(j.at("covariance"));
      inst.risk_aversion = j.at("risk_aversion").get<double>();
      inst.budget = j.at("budget").get<int>();
      inst.penalty_weight = j.at("penalty_weight").get<double>();
      if (static_cast<int>(inst.returns.size()) != n || inst.covariance.size() != n) {
        throw std::runtime_error("portfolio sizes do not match n");
      }
      record.instance = std::move(inst);
    } else {
      throw std::runtime_error("unknown instance type: " + type);
    }
    record.seed = j.at("seed").get<std::uint64_t>();
    return record;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("instance parse: missing or mistyped field: ") + e.what());
  }
}

}  // namespace tailopt
