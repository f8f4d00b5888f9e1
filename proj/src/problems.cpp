#include "tailopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace tailopt {

double QuboProblem::cost(std::uint64_t bits) const {
  const int nv = n();
  double total = 0.0;
  for (int i = 0; i < nv; ++i) {
    if (!((bits >> i) & 1)) continue;
    total += linear[i];
    for (int j = 0; j < nv; ++j) {
      if ((bits >> j) & 1) total += quadratic.at(i, j);
    }
  }
  return total;
}

double IsingModel::energy_of_index(std::uint64_t index) const {
  // Canonical evaluation order: linear terms, then upper-triangle couplings.
  // Everything downstream (materialized tables, round-trip checks) relies on
  // this single code path so energies agree bit for bit.
  const int nv = n();
  double total = constant;
  for (int i = 0; i < nv; ++i) {
    const double zi = ((index >> i) & 1) ? -1.0 : 1.0;
    total += linear[i] * zi;
  }
  for (int i = 0; i < nv; ++i) {
    const double zi = ((index >> i) & 1) ? -1.0 : 1.0;
    for (int j = i + 1; j < nv; ++j) {
      const double zj = ((index >> j) & 1) ? -1.0 : 1.0;
      const double w = quadratic.at(i, j) + quadratic.at(j, i);
      if (w != 0.0) total += w * (zi * zj);
    }
  }
  return total;
}

IsingModel binary_to_spin(const QuboProblem& qubo) {
  const int nv = qubo.n();
  if (qubo.quadratic.size() != nv) {
    throw std::invalid_argument("binary_to_spin: quadratic size must match linear size");
  }
  IsingModel out;
  out.linear.assign(nv, 0.0);
  out.quadratic = SquareMatrix(nv);
  // x_i = (1 - z_i)/2 applied to b^T x + x^T A x with A symmetric.
  double constant = 0.0;
  for (int i = 0; i < nv; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < nv; ++j) row_sum += qubo.quadratic.at(i, j);
    out.linear[i] = -0.5 * qubo.linear[i] - 0.5 * row_sum;
    constant += 0.5 * qubo.linear[i] + 0.25 * row_sum + 0.25 * qubo.quadratic.at(i, i);
    for (int j = 0; j < nv; ++j) {
      if (j != i) out.quadratic.at(i, j) = 0.25 * qubo.quadratic.at(i, j);
    }
  }
  out.constant = constant;
  return out;
}

DiagonalHamiltonian::DiagonalHamiltonian(int n_qubits, IsingModel model)
    : n_qubits_(n_qubits), model_(std::move(model)) {
  if (n_qubits < 1 || n_qubits > 24) {
    throw std::invalid_argument("DiagonalHamiltonian: qubit count must be in [1, 24]");
  }
  if (model_.n() != n_qubits) {
    throw std::invalid_argument("DiagonalHamiltonian: model size does not match qubit count");
  }
  if (n_qubits <= kMaterializeLimit) {
    const std::size_t d = dim();
    energies_.resize(d);
    for (std::size_t b = 0; b < d; ++b) energies_[b] = model_.energy_of_index(b);
    order_.resize(d);
    std::iota(order_.begin(), order_.end(), 0u);
    std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (energies_[a] != energies_[b]) return energies_[a] < energies_[b];
      return a < b;
    });
  }
}

double DiagonalHamiltonian::energy_of(std::uint64_t index) const {
  if (index >= dim()) throw std::invalid_argument("energy_of: basis index out of range");
  return energies_.empty() ? model_.energy_of_index(index) : energies_[index];
}

std::span<const double> DiagonalHamiltonian::energies() const {
  if (!materialized()) {
    throw std::logic_error("energies(): not materialized above " +
                           std::to_string(kMaterializeLimit) + " qubits");
  }
  return energies_;
}

std::span<const std::uint32_t> DiagonalHamiltonian::sorted_order() const {
  if (!materialized()) {
    throw std::logic_error("sorted_order(): not materialized above " +
                           std::to_string(kMaterializeLimit) + " qubits");
  }
  return order_;
}

double DiagonalHamiltonian::min_energy() const {
  if (materialized()) return energies_[order_[0]];
  double best = model_.energy_of_index(0);
  for (std::uint64_t b = 1; b < dim(); ++b) best = std::min(best, model_.energy_of_index(b));
  return best;
}

double DiagonalHamiltonian::max_abs_energy() const {
  double best = 0.0;
  for (std::uint64_t b = 0; b < dim(); ++b) best = std::max(best, std::fabs(energy_of(b)));
  return best;
}

// --- Max-Cut -----------------------------------------------------------------

namespace {

void validate_maxcut(const MaxCutInstance& inst) {
  if (inst.n_vertices < 2) throw std::invalid_argument("maxcut: need at least 2 vertices");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : inst.edges) {
    if (e.a < 0 || e.b < 0 || e.a >= inst.n_vertices || e.b >= inst.n_vertices) {
      throw std::invalid_argument("maxcut: edge endpoint out of range");
    }
    if (e.a >= e.b) throw std::invalid_argument("maxcut: edges must have a < b");
    if (!seen.emplace(e.a, e.b).second) throw std::invalid_argument("maxcut: duplicate edge");
  }
}

}  // namespace

QuboEncoding maxcut_qubo(const MaxCutInstance& inst) {
  validate_maxcut(inst);
  const int nv = inst.n_vertices;
  QuboEncoding enc;
  enc.qubo.linear.assign(nv, 0.0);
  enc.qubo.quadratic = SquareMatrix(nv);
  // Each edge contributes -w * (x_a + x_b - 2 x_a x_b): -w when cut, 0 otherwise.
  for (const auto& e : inst.edges) {
    enc.qubo.linear[e.a] -= e.weight;
    enc.qubo.linear[e.b] -= e.weight;
    enc.qubo.quadratic.at(e.a, e.b) += e.weight;
    enc.qubo.quadratic.at(e.b, e.a) += e.weight;
  }
  return enc;
}

DiagonalHamiltonian maxcut_hamiltonian(const MaxCutInstance& inst) {
  QuboEncoding enc = maxcut_qubo(inst);
  IsingModel model = binary_to_spin(enc.qubo);
  model.constant += enc.offset;
  return DiagonalHamiltonian(inst.n_vertices, std::move(model));
}

// --- Number Partitioning -----------------------------------------------------

namespace {

void validate_numpart(const NumberPartitionInstance& inst) {
  if (inst.numbers.size() < 2) throw std::invalid_argument("numpart: need at least 2 numbers");
  for (auto v : inst.numbers) {
    if (v < 1) throw std::invalid_argument("numpart: numbers must be positive integers");
  }
}

}  // namespace

QuboEncoding numpart_qubo(const NumberPartitionInstance& inst) {
  validate_numpart(inst);
  const int nv = static_cast<int>(inst.numbers.size());
  double total = 0.0;
  for (auto v : inst.numbers) total += static_cast<double>(v);
  QuboEncoding enc;
  enc.qubo.linear.assign(nv, 0.0);
  enc.qubo.quadratic = SquareMatrix(nv);
  // (S - 2 sum_i n_i x_i)^2 expanded over binaries; the S^2 term rides in
  // the offset because the QUBO form has no constant.
  for (int i = 0; i < nv; ++i) {
    const double ni = static_cast<double>(inst.numbers[i]);
    enc.qubo.linear[i] = -4.0 * total * ni;
    for (int j = 0; j < nv; ++j) {
      enc.qubo.quadratic.at(i, j) = 4.0 * ni * static_cast<double>(inst.numbers[j]);
    }
  }
  enc.offset = total * total;
  return enc;
}

DiagonalHamiltonian numpart_hamiltonian(const NumberPartitionInstance& inst) {
  QuboEncoding enc = numpart_qubo(inst);
  IsingModel model = binary_to_spin(enc.qubo);
  model.constant += enc.offset;
  return DiagonalHamiltonian(static_cast<int>(inst.numbers.size()), std::move(model));
}

// --- Portfolio optimization --------------------------------------------------

namespace {

void validate_portfolio(const PortfolioInstance& inst) {
  const int nv = static_cast<int>(inst.returns.size());
  if (nv < 1) throw std::invalid_argument("portfolio: need at least 1 asset");
  if (inst.covariance.size() != nv) {
    throw std::invalid_argument("portfolio: covariance size does not match returns");
  }
  if (inst.budget < 0 || inst.budget > nv) {
    throw std::invalid_argument("portfolio: budget must lie in {0, ..., n}");
  }
  if (inst.penalty_weight < 0.0) throw std::invalid_argument("portfolio: negative penalty weight");
}

}  // namespace

double default_penalty_weight(std::span<const double> returns, double risk_aversion,
                              const SquareMatrix& covariance) {
  double mu_sum = 0.0;
  for (double r : returns) mu_sum += r;
  double cov_abs = 0.0;
  for (double v : covariance.data()) cov_abs += std::fabs(v);
  return 10.0 * (mu_sum + risk_aversion * cov_abs);
}

QuboEncoding portfolio_qubo(const PortfolioInstance& inst) {
  validate_portfolio(inst);
  const int nv = static_cast<int>(inst.returns.size());
  const double q = inst.risk_aversion;
  const double pw = inst.penalty_weight;
  const double b = static_cast<double>(inst.budget);
  QuboEncoding enc;
  enc.qubo.linear.assign(nv, 0.0);
  enc.qubo.quadratic = SquareMatrix(nv);
  // -C(x) + pw (sum x - B)^2 with C(x) = mu^T x - q x^T Sigma x; the x_i^2
  // terms of the penalty fold into the linears, pw B^2 into the offset.
  for (int i = 0; i < nv; ++i) {
    enc.qubo.linear[i] = -inst.returns[i] + pw * (1.0 - 2.0 * b);
    for (int j = 0; j < nv; ++j) {
      double a = q * inst.covariance.at(i, j);
      if (j != i) a += pw;
      enc.qubo.quadratic.at(i, j) = a;
    }
  }
  enc.offset = pw * b * b;
  return enc;
}

DiagonalHamiltonian portfolio_hamiltonian(const PortfolioInstance& inst) {
  QuboEncoding enc = portfolio_qubo(inst);
  IsingModel model = binary_to_spin(enc.qubo);
  model.constant += enc.offset;
  return DiagonalHamiltonian(static_cast<int>(inst.returns.size()), std::move(model));
}

// --- Generators --------------------------------------------------------------

namespace {

bool is_connected(int n, const std::vector<GraphEdge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

bool is_regular(int n, const std::vector<GraphEdge>& edges) {
  std::vector<int> deg(n, 0);
  for (const auto& e : edges) {
    ++deg[e.a];
    ++deg[e.b];
  }
  for (int v = 1; v < n; ++v) {
    if (deg[v] != deg[0]) return false;
  }
  return true;
}

constexpr int kGeneratorAttempts = 100000;

MaxCutInstance generate_erdos_renyi(int n, double p, RandomSource& rng) {
  if (p <= 0.0 || p >= 1.0) {
    throw std::invalid_argument("maxcut generator: edge probability must lie in (0, 1)");
  }
  for (int attempt = 0; attempt < kGeneratorAttempts; ++attempt) {
    MaxCutInstance inst;
    inst.n_vertices = n;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.uniform_double() < p) inst.edges.push_back({i, j, 1.0});
      }
    }
    if (!is_connected(n, inst.edges)) continue;
    if (is_regular(n, inst.edges)) continue;
    return inst;
  }
  throw std::runtime_error("maxcut generator: no connected non-regular graph found");
}

MaxCutInstance generate_regular(int n, int degree, RandomSource& rng) {
  if (degree < 1 || degree >= n || (n * degree) % 2 != 0) {
    throw std::invalid_argument("maxcut generator: infeasible degree for regular graph");
  }
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * degree);
  for (int attempt = 0; attempt < kGeneratorAttempts; ++attempt) {
    stubs.clear();
    for (int v = 0; v < n; ++v) {
      for (int k = 0; k < degree; ++k) stubs.push_back(v);
    }
    // Fisher-Yates, then pair consecutive stubs (configuration model).
    for (std::size_t i = stubs.size(); i > 1; --i) {
      const std::size_t j = rng.uniform_index(i);
      std::swap(stubs[i - 1], stubs[j]);
    }
    std::set<std::pair<int, int>> seen;
    bool simple = true;
    MaxCutInstance inst;
    inst.n_vertices = n;
    for (std::size_t m = 0; m + 1 < stubs.size(); m += 2) {
      int a = stubs[m], b = stubs[m + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (a > b) std::swap(a, b);
      if (!seen.emplace(a, b).second) {
        simple = false;
        break;
      }
      inst.edges.push_back({a, b, 1.0});
    }
    if (!simple || !is_connected(n, inst.edges)) continue;
    std::sort(inst.edges.begin(), inst.edges.end(),
              [](const GraphEdge& x, const GraphEdge& y) {
                return std::pair{x.a, x.b} < std::pair{y.a, y.b};
              });
    return inst;
  }
  throw std::runtime_error("maxcut generator: no simple connected regular graph found");
}

}  // namespace

MaxCutInstance generate_maxcut_instance(int n_vertices, MaxCutFamily family,
                                        double density_or_degree, RandomSource& rng) {
  if (n_vertices < 3) throw std::invalid_argument("maxcut generator: need at least 3 vertices");
  switch (family) {
    case MaxCutFamily::kRandomNonRegular:
      return generate_erdos_renyi(n_vertices, density_or_degree, rng);
    case MaxCutFamily::kRegular:
      return generate_regular(n_vertices, static_cast<int>(density_or_degree), rng);
  }
  throw std::invalid_argument("maxcut generator: unknown family");
}

NumberPartitionInstance generate_numpart_instance(int count, std::int64_t bound,
                                                  RandomSource& rng) {
  if (count < 2) throw std::invalid_argument("numpart generator: need at least 2 numbers");
  if (bound < 1) throw std::invalid_argument("numpart generator: bound must be positive");
  NumberPartitionInstance inst;
  inst.numbers.resize(count);
  for (int i = 0; i < count; ++i) {
    inst.numbers[i] = 1 + static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(bound)));
  }
  return inst;
}

PortfolioInstance generate_portfolio_instance(int n_assets, double risk_aversion,
                                              RandomSource& rng) {
  if (n_assets < 1) throw std::invalid_argument("portfolio generator: need at least 1 asset");
  if (risk_aversion < 0.0) throw std::invalid_argument("portfolio generator: negative risk aversion");
  constexpr int kFactors = 3;
  constexpr double kJitter = 0.01;
  PortfolioInstance inst;
  inst.risk_aversion = risk_aversion;
  inst.returns.resize(n_assets);
  for (int i = 0; i < n_assets; ++i) inst.returns[i] = rng.uniform_double();
  // Rank-3 factor model: Sigma = F F^T / 3 + 0.01 I keeps Sigma PSD.
  std::vector<double> loadings(static_cast<std::size_t>(n_assets) * kFactors);
  for (auto& f : loadings) f = rng.uniform_double(-1.0, 1.0);
  inst.covariance = SquareMatrix(n_assets);
  for (int i = 0; i < n_assets; ++i) {
    for (int j = 0; j < n_assets; ++j) {
      double acc = 0.0;
      for (int k = 0; k < kFactors; ++k) {
        acc += loadings[static_cast<std::size_t>(i) * kFactors + k] *
               loadings[static_cast<std::size_t>(j) * kFactors + k];
      }
      inst.covariance.at(i, j) = acc / kFactors + (i == j ? kJitter : 0.0);
    }
  }
  inst.budget = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n_assets) + 1));
  inst.penalty_weight = default_penalty_weight(inst.returns, risk_aversion, inst.covariance);
  return inst;
}

}  // namespace tailopt
