#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace trivia {

using SparseRow = std::vector<std::pair<std::uint32_t, double>>;

/// One hinge constraint per row: y_i * w.x_i >= 1.
struct HingeProblem {
  std::vector<SparseRow> rows;
  std::vector<int> labels;  // +1 / -1
  std::size_t dimension = 0;
};

struct SolverOptions {
  double c = 17.0;
  /// Stop once the largest projected-gradient magnitude of an epoch is below
  /// this.
  double epsilon = 0.21;
  int max_iter = 1000;
  std::uint64_t seed = 0;
};

struct SolverResult {
  std::vector<double> w;
  std::vector<double> alpha;
  int epochs = 0;
  bool converged = false;
  /// Dual objective 0.5*|w|^2 - sum(alpha) after each epoch.
  std::vector<double> objective_trace;
  double dual_objective = 0.0;
  /// 0.5*|w|^2 + C * sum(max(0, 1 - y_i w.x_i)).
  double primal_objective = 0.0;
};

/// Dual coordinate descent for the L1-loss linear SVM without bias,
/// 0 <= alpha_i <= C, visiting rows in a fresh seeded shuffle every epoch.
/// Throws NonPositiveC, InvalidArgument on malformed input.
SolverResult solve_hinge_dual(const HingeProblem& problem,
                              const SolverOptions& options);

double primal_objective(const HingeProblem& problem, const std::vector<double>& w,
                        double c);

}  // namespace trivia
