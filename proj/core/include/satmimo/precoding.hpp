#pragma once

#include <Eigen/Dense>
#include <vector>

namespace satmimo {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Collection of per-UT precoding vectors under a total power budget.
// Column k of `columns` is w_k. Feasibility means total_power() <= power_budget;
// solvers return iterates that are power-tight at convergence.
struct PrecoderMatrix {
  CMat columns;
  double power_budget{0.0};

  int num_antennas() const { return static_cast<int>(columns.rows()); }
  int num_uts() const { return static_cast<int>(columns.cols()); }
  double total_power() const { return columns.squaredNorm(); }
};

struct SolveTrace {
  std::vector<double> objective_per_iteration;  // index 0 is the initial point
  int iterations{0};
  bool converged{false};
};

struct SolveOptions {
  double eps = 1e-3;   // stop when |obj(n+1) - obj(n)| < eps, bits/s/Hz
  int max_iter = 200;  // outer iteration cap
};

}  // namespace satmimo
