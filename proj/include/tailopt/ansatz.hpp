#pragma once

#include <memory>
#include <span>
#include <variant>

#include "tailopt/problems.hpp"
#include "tailopt/statevector.hpp"

namespace tailopt {

// Hardware-efficient ansatz: an initial R_y rotation layer, then per
// entangling layer a CZ over every qubit pair (i < j, ascending) followed by
// another R_y layer.  Parameters are layer-major: theta[layer * n + qubit],
// n * (1 + layers) in total.
struct HardwareEfficientAnsatz {
  int n_qubits = 0;
  int layers = 1;

  int param_count() const { return n_qubits * (1 + layers); }
};

// QAOA for a diagonal cost Hamiltonian: |+...+>, then per layer the diagonal
// phase e^{-i gamma H} followed by the mixer e^{-i beta sigma_x} on every
// qubit.  Parameters interleave as (gamma_1, beta_1, ..., gamma_p, beta_p).
struct QaoaAnsatz {
  std::shared_ptr<const DiagonalHamiltonian> hamiltonian;
  int layers = 1;

  int param_count() const { return 2 * layers; }
};

using Ansatz = std::variant<HardwareEfficientAnsatz, QaoaAnsatz>;

StateVector hea_prepare(const HardwareEfficientAnsatz& ansatz, std::span<const double> params);
StateVector qaoa_prepare(const QaoaAnsatz& ansatz, std::span<const double> params);

StateVector prepare(const Ansatz& ansatz, std::span<const double> params);
int param_count(const Ansatz& ansatz);
int ansatz_qubits(const Ansatz& ansatz);

// 2*pi / (n_j * n_m) where n_j, n_m are the two smallest numbers: beyond
// this the cheapest phase difference already wraps, so larger gamma adds
// nothing for number partitioning.
double qaoa_gamma_bound(const NumberPartitionInstance& inst);

}  // namespace tailopt
