#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "tailopt/random.hpp"

namespace tailopt {

// Exact n-qubit state vector (1 <= n <= 24), stored as 2^n complex
// amplitudes.  Qubit 0 is the least significant bit of the basis index.
// Gates update the amplitude array in place with stride iteration.
class StateVector {
 public:
  static constexpr int kMaxQubits = 24;

  // |0...0>
  explicit StateVector(int n_qubits);

  // Adopts an explicit amplitude vector (must have length 2^n); useful for
  // hand-built states in tests.  The amplitudes are not renormalized.
  static StateVector from_amplitudes(int n_qubits, std::vector<std::complex<double>> amps);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }

  // R_y(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]].
  void apply_ry(int qubit, double theta);

  void apply_h(int qubit);

  // Controlled-Z: negates amplitudes of basis states with both bits set.
  void apply_cz(int qubit_a, int qubit_b);

  // Transverse-field mixer layer: e^{-i beta sigma_x} on every qubit.
  void apply_mixer(double beta);

  // Diagonal phase layer: amp[b] *= e^{-i gamma * energies[b]}.
  void apply_diagonal_phase(double gamma, std::span<const double> energies);

  double norm() const;

  std::vector<double> probabilities() const;

  // `shots` independent draws from the measurement distribution; returns the
  // sampled basis indices (a multiset, in draw order).
  std::vector<std::uint32_t> sample_counts(std::size_t shots, RandomSource& rng) const;

 private:
  void apply_single_qubit(int qubit, const std::complex<double> m00, const std::complex<double> m01,
                          const std::complex<double> m10, const std::complex<double> m11);
  void check_qubit(int qubit) const;

  int n_qubits_;
  std::vector<std::complex<double>> amps_;
};

}  // namespace tailopt
