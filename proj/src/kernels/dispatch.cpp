#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"
#include "topophase/kernels.hpp"

namespace topophase::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, detail::scalar::conj_dot, detail::scalar::norm2,
                              detail::scalar::interference_sum, detail::scalar::fringe_eval,
                              detail::scalar::diag_sandwich};

#if defined(TOPOPHASE_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, detail::avx2::conj_dot, detail::avx2::norm2,
                            detail::avx2::interference_sum, detail::avx2::fringe_eval,
                            detail::avx2::diag_sandwich};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#if defined(TOPOPHASE_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, detail::neon::conj_dot, detail::neon::norm2,
                            detail::neon::interference_sum, detail::neon::fringe_eval,
                            detail::neon::diag_sandwich};
#endif

const KernelTable& select() {
  if (const char* env = std::getenv("TOPOPHASE_SIMD")) {
    const std::string want(env);
    for (Isa isa : available()) {
      if (to_string(isa) == want) return *table_for(isa);
    }
  }
  const auto isas = available();
  return *table_for(isas.back());
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return &kScalar;
    case Isa::Avx2:
#if defined(TOPOPHASE_HAVE_AVX2)
      if (cpu_has_avx2()) return &kAvx2;
#endif
      return nullptr;
    case Isa::Neon:
#if defined(TOPOPHASE_HAVE_NEON)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::Scalar};
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (table_for(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace topophase::kernels
