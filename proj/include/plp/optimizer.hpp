#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plp/energy.hpp"
#include "plp/lattice.hpp"

namespace plp {

struct OptimizerConfig {
  int n = 4;
  std::string lattice = "A2";  // any key accepted by Lattice::named
  double a = 1.0;
  int restarts = 50;
  int max_iters = 2000;
  double grad_tol = 1e-12;
  double armijo = 1e-4;  // sufficient-decrease constant
  double shrink = 0.5;   // backtracking factor
  double initial_step = 1e-2;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: PLP_THREADS, else hardware concurrency
};

struct DescentResult {
  std::vector<Vec> points;
  double energy = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool monotone = true;        // energy never increased on an accepted step
  std::vector<double> trace;   // energies after each accepted step, when requested
};

struct OptimizationResult {
  double best_energy = 0.0;
  Configuration best_config;
  std::size_t best_restart = 0;
  std::vector<double> energies;
  std::vector<bool> converged;
  std::vector<int> iterations;
  std::optional<double> lp_bound;  // when a magic interpolant exists for (n, lattice)
  bool above_lp_bound = true;      // every restart >= lp_bound - 1e-9 (relative)
};

// Energy sum_{i != j} F(x_i - x_j) and its gradient; grad[0] is zeroed (x_1 pinned).
double configuration_energy(const std::vector<Vec>& x, const GaussianPotential& pot, std::vector<Vec>* grad = nullptr);

// Gradient descent with backtracking from one start; points[0] stays fixed.
DescentResult descend(const GaussianPotential& pot, std::vector<Vec> start, const OptimizerConfig& cfg, bool record_trace = false);

// Start configuration for a restart: x_1 = 0, the rest uniform in the fundamental parallelepiped,
// drawn from the stream seeded by (seed, restart).
std::vector<Vec> random_start(const Lattice& lat, int n, std::uint64_t seed, std::uint64_t restart);

OptimizationResult minimize(const OptimizerConfig& cfg);

struct CandidateRow {
  std::string label;
  double energy;
};

// Energies of the candidates (and of minimize(*opt) when given), sorted ascending.
std::vector<CandidateRow> compare_candidates(int n, const std::string& lattice, double a,
                                             const std::vector<std::pair<std::string, Configuration>>& candidates,
                                             const std::optional<OptimizerConfig>& opt = std::nullopt);

// PLP_THREADS if set and positive, else hardware concurrency (at least 1).
int default_threads();

}  // namespace plp
