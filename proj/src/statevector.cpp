#include "tailopt/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tailopt {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("StateVector: qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " + std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

StateVector StateVector::from_amplitudes(int n_qubits, std::vector<std::complex<double>> amps) {
  StateVector sv(n_qubits);
  if (amps.size() != sv.dim()) {
    throw std::invalid_argument("StateVector::from_amplitudes: expected 2^n amplitudes");
  }
  sv.amps_ = std::move(amps);
  return sv;
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw std::invalid_argument("StateVector: qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(n_qubits_) + " qubits");
  }
}

void StateVector::apply_single_qubit(int qubit, const std::complex<double> m00,
                                     const std::complex<double> m01, const std::complex<double> m10,
                                     const std::complex<double> m11) {
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t lo_mask = mask - 1;
  const std::size_t hi_mask = ~lo_mask;
  const std::size_t half = dim() >> 1;
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
    const std::size_t i1 = i0 | mask;
    const std::complex<double> a0 = amps_[i0];
    const std::complex<double> a1 = amps_[i1];
    amps_[i0] = m00 * a0 + m01 * a1;
    amps_[i1] = m10 * a0 + m11 * a1;
  }
}

void StateVector::apply_ry(int qubit, double theta) {
  check_qubit(qubit);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  apply_single_qubit(qubit, {c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0});
}

void StateVector::apply_h(int qubit) {
  check_qubit(qubit);
  const double r = 1.0 / std::numbers::sqrt2;
  apply_single_qubit(qubit, {r, 0.0}, {r, 0.0}, {r, 0.0}, {-r, 0.0});
}

void StateVector::apply_cz(int qubit_a, int qubit_b) {
  check_qubit(qubit_a);
  check_qubit(qubit_b);
  if (qubit_a == qubit_b) throw std::invalid_argument("apply_cz: qubits must be distinct");
  const std::size_t both = (std::size_t{1} << qubit_a) | (std::size_t{1} << qubit_b);
  for (std::size_t i = 0; i < dim(); ++i) {
    if ((i & both) == both) amps_[i] = -amps_[i];
  }
}

void StateVector::apply_mixer(double beta) {
  const std::complex<double> c{std::cos(beta), 0.0};
  const std::complex<double> mis{0.0, -std::sin(beta)};
  for (int q = 0; q < n_qubits_; ++q) apply_single_qubit(q, c, mis, mis, c);
}

void StateVector::apply_diagonal_phase(double gamma, std::span<const double> energies) {
  if (energies.size() != dim()) {
    throw std::invalid_argument("apply_diagonal_phase: energies length must equal 2^n");
  }
  for (std::size_t b = 0; b < dim(); ++b) {
    amps_[b] *= std::polar(1.0, -gamma * energies[b]);
  }
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

std::vector<std::uint32_t> StateVector::sample_counts(std::size_t shots, RandomSource& rng) const {
  if (shots == 0) throw std::invalid_argument("sample_counts: shots must be positive");
  // Cumulative distribution, then one binary search per draw.  Drawing against
  // the actual total absorbs rounding drift in the norm.
  std::vector<double> cdf(dim());
  double acc = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    acc += std::norm(amps_[i]);
    cdf[i] = acc;
  }
  const double total = acc;
  std::vector<std::uint32_t> out(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform_double() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    out[s] = static_cast<std::uint32_t>(std::min<std::size_t>(it - cdf.begin(), dim() - 1));
  }
  return out;
}

}  // namespace tailopt
