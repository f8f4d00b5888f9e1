#include "tailopt/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tailopt {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
}

}  // namespace

double cvar_from_samples(const EnergySamples& samples, double alpha) {
  check_alpha(alpha);
  const std::size_t k = samples.energies.size();
  if (k == 0) throw std::invalid_argument("cvar_from_samples: empty sample set");
  std::size_t m = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(k)));
  m = std::clamp<std::size_t>(m, 1, k);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) total += samples.energies[i];
  return total / static_cast<double>(m);
}

double exact_cvar(const StateVector& state, const DiagonalHamiltonian& h, double alpha) {
  check_alpha(alpha);
  if (state.dim() != h.dim()) throw std::invalid_argument("exact_cvar: qubit counts differ");
  const auto amps = state.amplitudes();
  double total = 0.0;
  double remaining = alpha;
  for (std::uint32_t idx : h.sorted_order()) {
    const double p = std::norm(amps[idx]);
    const double w = std::min(p, remaining);
    total += w * h.energy_of(idx);
    remaining -= w;
    if (remaining <= 0.0) break;
  }
  return total / alpha;
}

EnergySamples sample_energies(const StateVector& state, const DiagonalHamiltonian& h,
                              std::size_t shots, RandomSource& rng) {
  if (state.dim() != h.dim()) throw std::invalid_argument("sample_energies: qubit counts differ");
  const auto indices = state.sample_counts(shots, rng);
  EnergySamples out;
  out.energies.resize(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) out.energies[i] = h.energy_of(indices[i]);
  std::sort(out.energies.begin(), out.energies.end());
  return out;
}

std::size_t shots_for_alpha(std::size_t base_shots, double alpha) {
  check_alpha(alpha);
  if (base_shots == 0) throw std::invalid_argument("shots_for_alpha: base_shots must be positive");
  return static_cast<std::size_t>(std::ceil(static_cast<double>(base_shots) / alpha));
}

Evaluation evaluate(const ObjectiveSpec& spec, const StateVector& state,
                    const DiagonalHamiltonian& h, RandomSource& rng) {
  check_alpha(spec.alpha);
  if (spec.mode == ObjectiveMode::kExact) {
    return {exact_cvar(state, h, spec.alpha), 0};
  }
  const std::size_t shots = shots_for_alpha(spec.base_shots, spec.alpha);
  const EnergySamples samples = sample_energies(state, h, shots, rng);
  return {cvar_from_samples(samples, spec.alpha), shots};
}

}  // namespace tailopt
