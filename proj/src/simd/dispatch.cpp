#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ordrep/simd/kernels.hpp"

namespace ordrep::simd {

#if defined(ORDREP_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace avx2
#endif
#if defined(ORDREP_HAVE_NEON)
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace neon
#endif

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::dot, &scalar::axpy};
#if defined(ORDREP_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::dot, &avx2::axpy};
#endif
#if defined(ORDREP_HAVE_NEON)
constexpr KernelTable kNeon{Isa::neon, &neon::dot, &neon::axpy};
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(ORDREP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(ORDREP_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* pick_default() {
  if (const char* env = std::getenv("ORDREP_SIMD")) {
    const std::string want(env);
    for (Isa isa : available_isas()) {
      if (isa_name(isa) == want) return &table_for(isa);
    }
  }
  const auto isas = available_isas();
  return &table_for(isas.back());
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{pick_default()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& table_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return kScalar;
#if defined(ORDREP_HAVE_AVX2)
    case Isa::avx2:
      return kAvx2;
#endif
#if defined(ORDREP_HAVE_NEON)
    case Isa::neon:
      return kNeon;
#endif
    default:
      break;
  }
  throw std::invalid_argument("SIMD variant '" + std::string(isa_name(isa)) + "' is not compiled in");
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

Isa active_isa() { return active().isa; }

void set_active_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::invalid_argument("SIMD variant '" + std::string(isa_name(isa)) + "' is not available");
  }
  current().store(&table_for(isa), std::memory_order_relaxed);
}

}  // namespace ordrep::simd
