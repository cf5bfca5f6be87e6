#include "trivia/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trivia/error.hpp"
#include "trivia/random.hpp"

namespace trivia {

namespace {

double dot(const SparseRow& row, const std::vector<double>& w) {
  double sum = 0.0;
  for (const auto& [index, value] : row) sum += w[index] * value;
  return sum;
}

double half_norm2(const std::vector<double>& w) {
  double sum = 0.0;
  for (double v : w) sum += v * v;
  return 0.5 * sum;
}

}  // namespace

double primal_objective(const HingeProblem& problem, const std::vector<double>& w,
                        double c) {
  double loss = 0.0;
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    loss += std::max(0.0, 1.0 - problem.labels[i] * dot(problem.rows[i], w));
  }
  return half_norm2(w) + c * loss;
}

SolverResult solve_hinge_dual(const HingeProblem& problem,
                              const SolverOptions& options) {
  if (!(options.c > 0.0)) {
    throw Error(ErrorKind::NonPositiveC, "C must be positive");
  }
  if (!(options.epsilon > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  }
  if (options.max_iter < 1) {
    throw Error(ErrorKind::InvalidArgument, "max_iter must be at least 1");
  }
  const std::size_t n = problem.rows.size();
  if (problem.labels.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "one label per row required");
  }
  std::vector<double> qd(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (problem.labels[i] != 1 && problem.labels[i] != -1) {
      throw Error(ErrorKind::InvalidArgument, "labels must be +1 or -1");
    }
    for (const auto& [index, value] : problem.rows[i]) {
      if (index >= problem.dimension) {
        throw Error(ErrorKind::InvalidArgument, "feature index out of range");
      }
      qd[i] += value * value;
    }
  }

  const double c = options.c;
  SolverResult result;
  result.w.assign(problem.dimension, 0.0);
  result.alpha.assign(n, 0.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(options.seed);

  for (int epoch = 0; epoch < options.max_iter; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double max_violation = 0.0;
    for (std::size_t i : order) {
      const double y = problem.labels[i];
      double& a = result.alpha[i];
      const double g = y * dot(problem.rows[i], result.w) - 1.0;
      double pg = g;
      if (a <= 0.0) {
        pg = std::min(g, 0.0);
      } else if (a >= c) {
        pg = std::max(g, 0.0);
      }
      max_violation = std::max(max_violation, std::fabs(pg));
      if (pg == 0.0) continue;
      // An all-zero row cannot move w; its loss is fixed at 1, so alpha = C.
      const double updated =
          qd[i] > 0.0 ? std::clamp(a - g / qd[i], 0.0, c) : c;
      const double delta = (updated - a) * y;
      a = updated;
      for (const auto& [index, value] : problem.rows[i]) {
        result.w[index] += delta * value;
      }
    }
    result.epochs = epoch + 1;
    const double alpha_sum =
        std::accumulate(result.alpha.begin(), result.alpha.end(), 0.0);
    result.objective_trace.push_back(half_norm2(result.w) - alpha_sum);
    if (max_violation < options.epsilon) {
      result.converged = true;
      break;
    }
  }
  result.dual_objective = result.objective_trace.back();
  result.primal_objective = primal_objective(problem, result.w, c);
  return result;
}

}  // namespace trivia
