#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tailopt/random.hpp"

namespace tailopt {

// Dense square matrix, row-major.  Small helper for QUBO/Ising coefficient
// tables; not a linear-algebra type.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  std::span<const double> data() const { return data_; }

 private:
  int n_ = 0;
  std::vector<double> data_;
};

// Binary quadratic cost b^T x + x^T A x over x in {0,1}^n; A is symmetric
// and may carry a diagonal (x_i^2 = x_i, so the diagonal acts linearly).
struct QuboProblem {
  std::vector<double> linear;
  SquareMatrix quadratic;

  int n() const { return static_cast<int>(linear.size()); }
  double cost(std::uint64_t bits) const;
};

// Spin cost c^T z + z^T Q z + constant over z in {-1,+1}^n; Q is symmetric
// with zero diagonal (any diagonal folds into the constant).
struct IsingModel {
  std::vector<double> linear;
  SquareMatrix quadratic;
  double constant = 0.0;

  int n() const { return static_cast<int>(linear.size()); }
  // Energy of basis state `index`; bit i set means z_i = -1, clear means +1.
  double energy_of_index(std::uint64_t index) const;
};

// Change of variables x_i = (1 - z_i)/2.  Exact on the costs: for every
// bitstring, qubo.cost(x) == result.energy at the corresponding spins.
IsingModel binary_to_spin(const QuboProblem& qubo);

// Diagonal Hamiltonian over the computational basis.  For n <= 20 qubits the
// 2^n energies are materialized eagerly together with the basis order sorted
// ascending by (energy, index); above that, energies are computed per query
// and the bulk accessors are unavailable.  Immutable after construction.
class DiagonalHamiltonian {
 public:
  static constexpr int kMaterializeLimit = 20;

  DiagonalHamiltonian(int n_qubits, IsingModel model);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return std::size_t{1} << n_qubits_; }
  const IsingModel& model() const { return model_; }

  double energy_of(std::uint64_t index) const;

  bool materialized() const { return !energies_.empty(); }
  std::span<const double> energies() const;
  std::span<const std::uint32_t> sorted_order() const;
  double min_energy() const;
  double max_abs_energy() const;

 private:
  int n_qubits_;
  IsingModel model_;
  std::vector<double> energies_;
  std::vector<std::uint32_t> order_;
};

// --- Problem instances ------------------------------------------------------

struct GraphEdge {
  int a = 0;
  int b = 0;
  double weight = 1.0;
};

struct MaxCutInstance {
  int n_vertices = 0;
  std::vector<GraphEdge> edges;  // canonical a < b, no duplicates or loops
};

struct NumberPartitionInstance {
  std::vector<std::int64_t> numbers;  // positive integers
};

struct PortfolioInstance {
  std::vector<double> returns;  // mu_i
  SquareMatrix covariance;      // Sigma, PSD
  double risk_aversion = 0.5;   // q
  int budget = 0;               // B, number of assets to pick
  double penalty_weight = 0.0;  // weight on (sum_i x_i - B)^2
};

// QUBO plus the additive constant the pure QUBO form cannot carry.
struct QuboEncoding {
  QuboProblem qubo;
  double offset = 0.0;
};

// Cut value negated: E(x) = -sum over cut edges of w_ij, so the ground state
// is the maximum cut and E(all zeros) = 0.
QuboEncoding maxcut_qubo(const MaxCutInstance& inst);
DiagonalHamiltonian maxcut_hamiltonian(const MaxCutInstance& inst);

// Signed-sum residue squared: E(x) = (sum_i s_i n_i)^2 with s_i = +1 for
// bit 0 and -1 for bit 1; a perfect partition has E = 0.
QuboEncoding numpart_qubo(const NumberPartitionInstance& inst);
DiagonalHamiltonian numpart_hamiltonian(const NumberPartitionInstance& inst);

// E(x) = -C(x) + penalty_weight * (sum_i x_i - B)^2 where
// C(x) = sum_i mu_i x_i - q * sum_{ij} Sigma_ij x_i x_j.
QuboEncoding portfolio_qubo(const PortfolioInstance& inst);
DiagonalHamiltonian portfolio_hamiltonian(const PortfolioInstance& inst);

// 10 * (sum_i mu_i + q * sum_{ij} |Sigma_ij|): dominates any attainable
// |C(x)|, so constraint violations are never profitable.
double default_penalty_weight(std::span<const double> returns, double risk_aversion,
                              const SquareMatrix& covariance);

// --- Instance generators (deterministic given the RandomSource state) -------

enum class MaxCutFamily {
  kRandomNonRegular,  // Erdos-Renyi, rejecting regular or disconnected draws
  kRegular,           // uniform simple k-regular via the configuration model
};

// density_or_degree: edge probability for kRandomNonRegular, vertex degree
// for kRegular.  Throws std::invalid_argument on infeasible parameters.
MaxCutInstance generate_maxcut_instance(int n_vertices, MaxCutFamily family,
                                        double density_or_degree, RandomSource& rng);

// `count` integers uniform on {1, ..., bound}.
NumberPartitionInstance generate_numpart_instance(int count, std::int64_t bound, RandomSource& rng);

// Returns uniform on [0,1]; covariance from a rank-3 factor model
// F F^T / 3 + 0.01 I; budget uniform on {0, ..., n}; default penalty weight.
PortfolioInstance generate_portfolio_instance(int n_assets, double risk_aversion, RandomSource& rng);

}  // namespace tailopt
