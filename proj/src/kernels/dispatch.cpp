#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string_view>

#include "mlob/kernels.hpp"

namespace mlob::kernels {

namespace {

constexpr KernelTable kScalar{scalar::dot, scalar::abs_sum, scalar::covariation, scalar::moments};
#ifdef MLOB_HAVE_AVX2
constexpr KernelTable kAvx2{avx2::dot, avx2::abs_sum, avx2::covariation, avx2::moments};
#endif

Isa detect() noexcept {
  if (const char* env = std::getenv("MLOB_SIMD"); env && std::string_view(env) == "scalar") return Isa::Scalar;
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_available() noexcept {
#if defined(MLOB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const KernelTable& table(Isa isa) {
#ifdef MLOB_HAVE_AVX2
  if (isa == Isa::Avx2 && avx2_available()) return kAvx2;
#endif
  (void)isa;
  return kScalar;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) noexcept {
  active().store(isa == Isa::Avx2 && !avx2_available() ? Isa::Scalar : isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return table(active_isa()).dot(x.data(), y.data(), x.size());
}

double abs_sum(std::span<const double> x) { return table(active_isa()).abs_sum(x.data(), x.size()); }

CovariationSums covariation(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return table(active_isa()).covariation(x.data(), y.data(), x.size());
}

Moments moments(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return table(active_isa()).moments(x.data(), y.data(), x.size());
}

}  // namespace mlob::kernels
