#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordrep/core/matrix.hpp"
#include "ordrep/svm/kernel.hpp"

namespace ordrep {

struct SmoOptions {
  // Stop once the maximal KKT violating pair is closer than this.
  double tolerance = 1e-3;
  // 0 selects max(10^7, 100 n).
  std::size_t max_iterations = 0;
  // LRU kernel-row cache capacity, in rows.
  std::size_t cache_rows = 2048;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations, double gap)
      : std::runtime_error(what), iterations_(iterations), gap_(gap) {}
  std::size_t iterations() const { return iterations_; }
  double gap() const { return gap_; }

 private:
  std::size_t iterations_;
  double gap_;
};

// Solution of the soft-margin dual
//   min 1/2 a'Qa - sum(a)   s.t.  y'a = 0,  0 <= a_i <= C_i,   Q_ij = y_i y_j k(x_i, x_j)
struct DualSolution {
  std::vector<double> alpha;
  double bias = 0.0;        // decision g(x) = sum a_i y_i k(x_i, x) + bias
  double objective = 0.0;   // dual objective at alpha
  double gap = 0.0;         // final maximal violation m(a) - M(a)
  std::size_t iterations = 0;
};

// Sequential minimal optimization. The first working index is the maximal
// KKT violator, the second maximizes the second-order decrease among indices
// violating with it; ties go to the lowest index. Stops when the maximal
// violation drops below the tolerance. `y` holds +-1,
// `upper` the per-example box bounds C_i.
DualSolution solve_svm_dual(const Matrix& x, std::span<const double> y, std::span<const double> upper,
                            const Kernel& kernel, const SmoOptions& options = {});

// Dual objective 1/2 a'Qa - sum(a) for an explicit Gram matrix (n x n, row-major).
double dual_objective(std::span<const double> gram, std::span<const double> y, std::span<const double> alpha);

struct KktReport {
  double max_violation = 0.0;   // worst margin-condition violation
  double equality_residual = 0.0;  // |y'a|
  double box_violation = 0.0;
  bool passed(double tol) const {
    return max_violation <= tol && equality_residual <= tol && box_violation <= tol;
  }
};

// Audits a dual solution against the KKT conditions of the primal:
//   a_i = 0      =>  y_i g(x_i) >= 1
//   0 < a_i < C  =>  y_i g(x_i) == 1
//   a_i = C_i    =>  y_i g(x_i) <= 1
KktReport kkt_audit(const Matrix& x, std::span<const double> y, std::span<const double> upper,
                    const Kernel& kernel, std::span<const double> alpha, double bias);

}  // namespace ordrep
