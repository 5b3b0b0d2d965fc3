#include "ordrep/svm/smo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>

#include "ordrep/simd/kernels.hpp"

namespace ordrep {
namespace {

constexpr double kTau = 1e-12;

// Rows of Q_ij = y_i y_j k(x_i, x_j), computed on demand. When every row
// fits they are kept for the whole solve; otherwise an LRU evicts.
class KernelRowCache {
 public:
  KernelRowCache(const Matrix& x, std::span<const double> y, const Kernel& kernel, std::size_t capacity)
      : x_(x), y_(y), kernel_(kernel), capacity_(std::max<std::size_t>(capacity, 2)),
        dense_(capacity_ >= x.rows()), slot_of_(x.rows()), cached_(x.rows(), false) {
    if (dense_) rows_.resize(x.rows());
  }

  std::span<const double> row(std::size_t i) {
    if (dense_) {
      if (!cached_[i]) {
        rows_[i] = compute(i);
        cached_[i] = true;
      }
      return rows_[i];
    }
    if (cached_[i]) {
      if (slot_of_[i] != lru_.begin()) lru_.splice(lru_.begin(), lru_, slot_of_[i]);
      return lru_.front().values;
    }
    if (lru_.size() >= capacity_) {
      cached_[lru_.back().index] = false;
      lru_.pop_back();
    }
    lru_.push_front(Entry{i, compute(i)});
    slot_of_[i] = lru_.begin();
    cached_[i] = true;
    return lru_.front().values;
  }

 private:
  struct Entry {
    std::size_t index;
    std::vector<double> values;
  };
  using Slot = std::list<Entry>::iterator;

  std::vector<double> compute(std::size_t i) const {
    std::vector<double> values(x_.rows());
    const auto xi = x_.row(i);
    for (std::size_t t = 0; t < x_.rows(); ++t) values[t] = y_[i] * y_[t] * kernel_(xi, x_.row(t));
    return values;
  }

  const Matrix& x_;
  std::span<const double> y_;
  const Kernel& kernel_;
  std::size_t capacity_;
  bool dense_;
  std::vector<std::vector<double>> rows_;
  std::list<Entry> lru_;
  std::vector<Slot> slot_of_;
  std::vector<bool> cached_;
};

bool is_upper_bound(double a, double c) { return a >= c; }
bool is_lower_bound(double a) { return a <= 0.0; }

}  // namespace

DualSolution solve_svm_dual(const Matrix& x, std::span<const double> y, std::span<const double> upper,
                            const Kernel& kernel, const SmoOptions& options) {
  const std::size_t n = x.rows();
  if (y.size() != n || upper.size() != n) throw std::invalid_argument("SMO: label/cost length mismatch");
  bool has_pos = false, has_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] == 1.0) {
      has_pos = true;
    } else if (y[i] == -1.0) {
      has_neg = true;
    } else {
      throw std::invalid_argument("SMO: labels must be +1 or -1");
    }
    if (!(upper[i] > 0.0)) throw std::invalid_argument("SMO: costs must be positive");
  }
  if (!has_pos || !has_neg) throw std::invalid_argument("binary SVM needs both classes present");
  kernel.validate();

  KernelRowCache cache(x, y, kernel, options.cache_rows);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = kernel(x.row(i), x.row(i));

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);

  const std::size_t max_iter =
      options.max_iterations > 0 ? options.max_iterations : std::max<std::size_t>(10'000'000, 100 * n);
  DualSolution out;
  std::size_t iter = 0;
  double gap = std::numeric_limits<double>::infinity();
  while (true) {
    // i: maximal violator in I_up. j: largest second-order gain among the
    // I_low indices violating with i. The stopping gap is the first-order
    // maximal violation m_up - m_low.
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    std::size_t i = n, j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const bool in_up = (y[t] > 0) ? !is_upper_bound(alpha[t], upper[t]) : !is_lower_bound(alpha[t]);
      if (in_up && -y[t] * grad[t] > m_up) {
        m_up = -y[t] * grad[t];
        i = t;
      }
    }
    if (i != n) {
      const auto qi = cache.row(i);
      // Maximize b^2 / a, compared as cross products.
      double best_b2 = -1.0, best_a = 1.0;
      const double yi = y[i], di = diag[i];
      for (std::size_t t = 0; t < n; ++t) {
        const bool in_low = (y[t] > 0) ? !is_lower_bound(alpha[t]) : !is_upper_bound(alpha[t], upper[t]);
        if (!in_low) continue;
        const double v = -y[t] * grad[t];
        m_low = std::min(m_low, v);
        const double b = m_up - v;
        if (b <= 0.0) continue;
        double a = di + diag[t] - 2.0 * yi * y[t] * qi[t];
        if (a <= 0.0) a = kTau;
        const double b2 = b * b;
        if (b2 * best_a > best_b2 * a) {
          best_b2 = b2;
          best_a = a;
          j = t;
        }
      }
    }
    gap = (i == n || j == n) ? 0.0 : m_up - m_low;
    if (gap < options.tolerance) break;
    if (iter >= max_iter) {
      throw ConvergenceError("SMO did not converge after " + std::to_string(iter) +
                                 " iterations (violation " + std::to_string(gap) + ")",
                             iter, gap);
    }
    ++iter;

    const auto qi = cache.row(i);
    const double qij = qi[j];
    const double ci = upper[i], cj = upper[j];
    const double old_ai = alpha[i], old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = diag[i] + diag[j] + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > ci - cj) {
        if (alpha[i] > ci) {
          alpha[i] = ci;
          alpha[j] = ci - diff;
        }
      } else if (alpha[j] > cj) {
        alpha[j] = cj;
        alpha[i] = cj + diff;
      }
    } else {
      double quad = diag[i] + diag[j] - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > ci) {
        if (alpha[i] > ci) {
          alpha[i] = ci;
          alpha[j] = sum - ci;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > cj) {
        if (alpha[j] > cj) {
          alpha[j] = cj;
          alpha[i] = sum - cj;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    // Row i may be evicted by fetching row j; re-fetch after.
    {
      simd::axpy(dai, cache.row(i), grad);
    }
    {
      simd::axpy(daj, cache.row(j), grad);
    }
  }

  // Bias: average over free vectors, midpoint of the feasible interval otherwise.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (is_upper_bound(alpha[t], upper[t])) {
      if (y[t] < 0) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else if (is_lower_bound(alpha[t])) {
      if (y[t] > 0) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;

  double objective = 0.0;
  for (std::size_t t = 0; t < n; ++t) objective += alpha[t] * (grad[t] - 1.0);
  out.alpha = std::move(alpha);
  out.bias = -rho;
  out.objective = 0.5 * objective;
  out.gap = gap;
  out.iterations = iter;
  return out;
}

double dual_objective(std::span<const double> gram, std::span<const double> y, std::span<const double> alpha) {
  const std::size_t n = alpha.size();
  double quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) quad += alpha[i] * alpha[j] * y[i] * y[j] * gram[i * n + j];
  }
  return 0.5 * quad - std::accumulate(alpha.begin(), alpha.end(), 0.0);
}

KktReport kkt_audit(const Matrix& x, std::span<const double> y, std::span<const double> upper,
                    const Kernel& kernel, std::span<const double> alpha, double bias) {
  const std::size_t n = x.rows();
  KktReport report;
  double eq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    eq += alpha[i] * y[i];
    report.box_violation = std::max({report.box_violation, -alpha[i], alpha[i] - upper[i]});
    double g = bias;
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] != 0.0) g += alpha[t] * y[t] * kernel(x.row(t), x.row(i));
    }
    const double margin = y[i] * g;
    double violation = 0.0;
    if (alpha[i] <= 0.0) {
      violation = std::max(0.0, 1.0 - margin);
    } else if (alpha[i] >= upper[i]) {
      violation = std::max(0.0, margin - 1.0);
    } else {
      violation = std::abs(margin - 1.0);
    }
    report.max_violation = std::max(report.max_violation, violation);
  }
  report.equality_residual = std::abs(eq);
  return report;
}

}  // namespace ordrep
