#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel inner loops shared by the kernel machines and the networks.
//
// Every routine has a scalar reference implementation; vectorized variants
// (AVX2+FMA on x86-64, NEON on AArch64) are compiled where the toolchain
// supports them and picked at runtime from the CPU's capabilities. Setting
// ORDREP_SIMD=scalar|avx2|neon overrides the choice when that variant exists.
namespace ordrep::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

using DotFn = double (*)(const double* a, const double* b, std::size_t n);
using AxpyFn = void (*)(double alpha, const double* x, double* y, std::size_t n);

struct KernelTable {
  Isa isa;
  DotFn dot;
  AxpyFn axpy;
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace scalar

// Variants compiled into this build that the running CPU can execute.
std::vector<Isa> available_isas();

const KernelTable& table_for(Isa isa);
const KernelTable& active();
Isa active_isa();

// Test hook; throws std::invalid_argument if the variant is unavailable.
void set_active_isa(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

}  // namespace ordrep::simd
