#include "ordrep/svm/kernel.hpp"

#include <stdexcept>

#include "ordrep/simd/kernels.hpp"

namespace ordrep {

void Kernel::validate() const {
  if (kind == KernelKind::polynomial && degree < 1) {
    throw std::invalid_argument("polynomial kernel degree must be >= 1");
  }
}

double Kernel::operator()(std::span<const double> a, std::span<const double> b) const {
  const std::size_t n = a.size();
  const std::size_t head = n - linear_tail;
  const double base = simd::dot(a.first(head), b.first(head));
  double value = base;
  if (kind == KernelKind::polynomial) {
    const double t = 1.0 + base;
    value = t;
    for (int d = 1; d < degree; ++d) value *= t;
  }
  if (linear_tail > 0) value += simd::dot(a.subspan(head), b.subspan(head));
  return value;
}

std::string Kernel::describe() const {
  std::string out = kernel_kind_name(kind);
  if (kind == KernelKind::polynomial) out += "(" + std::to_string(degree) + ")";
  if (linear_tail > 0) out += "+e" + std::to_string(linear_tail);
  return out;
}

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "linear") return KernelKind::linear;
  if (name == "poly" || name == "polynomial") return KernelKind::polynomial;
  throw std::invalid_argument("unknown kernel '" + name + "' (expected linear or poly)");
}

std::string kernel_kind_name(KernelKind kind) {
  return kind == KernelKind::linear ? "linear" : "poly";
}

}  // namespace ordrep
