#include "tailopt/ansatz.hpp"

#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tailopt {

namespace {

void check_params(int expected, std::size_t got, const char* what) {
  if (static_cast<std::size_t>(expected) != got) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(expected) +
                                " parameters, got " + std::to_string(got));
  }
}

}  // namespace

StateVector hea_prepare(const HardwareEfficientAnsatz& ansatz, std::span<const double> params) {
  if (ansatz.layers < 1) throw std::invalid_argument("hea_prepare: layers must be >= 1");
  check_params(ansatz.param_count(), params.size(), "hea_prepare");
  const int n = ansatz.n_qubits;
  StateVector state(n);
  for (int q = 0; q < n; ++q) state.apply_ry(q, params[q]);
  for (int layer = 1; layer <= ansatz.layers; ++layer) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) state.apply_cz(i, j);
    }
    for (int q = 0; q < n; ++q) state.apply_ry(q, params[static_cast<std::size_t>(layer) * n + q]);
  }
  return state;
}

StateVector qaoa_prepare(const QaoaAnsatz& ansatz, std::span<const double> params) {
  if (!ansatz.hamiltonian) throw std::invalid_argument("qaoa_prepare: missing hamiltonian");
  if (ansatz.layers < 1) throw std::invalid_argument("qaoa_prepare: layers must be >= 1");
  check_params(ansatz.param_count(), params.size(), "qaoa_prepare");
  const DiagonalHamiltonian& h = *ansatz.hamiltonian;
  StateVector state(h.n_qubits());
  for (int q = 0; q < h.n_qubits(); ++q) state.apply_h(q);
  for (int layer = 0; layer < ansatz.layers; ++layer) {
    state.apply_diagonal_phase(params[2 * layer], h.energies());
    state.apply_mixer(params[2 * layer + 1]);
  }
  return state;
}

StateVector prepare(const Ansatz& ansatz, std::span<const double> params) {
  return std::visit(
      [&](const auto& a) -> StateVector {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, HardwareEfficientAnsatz>) {
          return hea_prepare(a, params);
        } else {
          return qaoa_prepare(a, params);
        }
      },
      ansatz);
}

int param_count(const Ansatz& ansatz) {
  return std::visit([](const auto& a) { return a.param_count(); }, ansatz);
}

int ansatz_qubits(const Ansatz& ansatz) {
  return std::visit(
      [](const auto& a) -> int {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, HardwareEfficientAnsatz>) {
          return a.n_qubits;
        } else {
          return a.hamiltonian ? a.hamiltonian->n_qubits() : 0;
        }
      },
      ansatz);
}

double qaoa_gamma_bound(const NumberPartitionInstance& inst) {
  if (inst.numbers.size() < 2) {
    throw std::invalid_argument("qaoa_gamma_bound: need at least 2 numbers");
  }
  std::int64_t lo1 = std::numeric_limits<std::int64_t>::max();
  std::int64_t lo2 = lo1;
  for (auto v : inst.numbers) {
    if (v < 1) throw std::invalid_argument("qaoa_gamma_bound: numbers must be positive");
    if (v < lo1) {
      lo2 = lo1;
      lo1 = v;
    } else if (v < lo2) {
      lo2 = v;
    }
  }
  return 2.0 * std::numbers::pi / (static_cast<double>(lo1) * static_cast<double>(lo2));
}

}  // namespace tailopt
