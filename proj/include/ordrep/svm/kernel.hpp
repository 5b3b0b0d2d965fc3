#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace ordrep {

enum class KernelKind { linear, polynomial };

// k(x, y) = x'y or (1 + x'y)^degree over the leading coordinates. When
// `linear_tail` > 0 the last `linear_tail` coordinates are excluded from the
// base kernel and contribute a plain dot product instead; this is how the
// replicated e-block enters: k̄(x̄, ȳ) = k(x, y) + e_x'e_y.
struct Kernel {
  KernelKind kind = KernelKind::linear;
  int degree = 1;
  std::size_t linear_tail = 0;

  static Kernel linear() { return {KernelKind::linear, 1, 0}; }
  static Kernel polynomial(int degree) { return {KernelKind::polynomial, degree, 0}; }

  // Same base kernel with `e_dim` trailing components entering linearly.
  Kernel extended(std::size_t e_dim) const { return {kind, degree, e_dim}; }

  void validate() const;
  double operator()(std::span<const double> a, std::span<const double> b) const;

  std::string describe() const;
};

KernelKind parse_kernel_kind(const std::string& name);
std::string kernel_kind_name(KernelKind kind);

}  // namespace ordrep
