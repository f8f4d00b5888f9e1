#pragma once

#include <cstdint>
#include <vector>

#include "tailopt/problems.hpp"
#include "tailopt/random.hpp"
#include "tailopt/statevector.hpp"

namespace tailopt {

// Measured energies, sorted ascending.
struct EnergySamples {
  std::vector<double> energies;
};

enum class ObjectiveMode {
  kSampled,  // finite shots, ceil(base_shots / alpha) per evaluation
  kExact,    // closed-form CVaR of the exact distribution, no shots
};

struct ObjectiveSpec {
  double alpha = 1.0;             // tail fraction, in (0, 1]
  std::size_t base_shots = 1000;  // K: expected number of samples kept in the tail
  ObjectiveMode mode = ObjectiveMode::kSampled;
};

// Mean of the ceil(alpha * K) smallest of the K samples.
double cvar_from_samples(const EnergySamples& samples, double alpha);

// CVaR of the exact measurement distribution: walk basis states in ascending
// (energy, index) order, accumulate probability mass up to alpha weighting
// the boundary state fractionally, and divide by alpha.  alpha = 1 gives the
// exact energy expectation.
double exact_cvar(const StateVector& state, const DiagonalHamiltonian& h, double alpha);

// `shots` measurement draws mapped to their energies.
EnergySamples sample_energies(const StateVector& state, const DiagonalHamiltonian& h,
                              std::size_t shots, RandomSource& rng);

// ceil(base / alpha): scales the shot count so the alpha-tail still holds an
// expected `base` samples.
std::size_t shots_for_alpha(std::size_t base_shots, double alpha);

struct Evaluation {
  double value = 0.0;
  std::size_t shots_used = 0;
};

// One objective evaluation of a prepared state; fresh samples every call in
// sampled mode, zero shots in exact mode.
Evaluation evaluate(const ObjectiveSpec& spec, const StateVector& state,
                    const DiagonalHamiltonian& h, RandomSource& rng);

}  // namespace tailopt
