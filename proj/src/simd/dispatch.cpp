#include <stdexcept>
#include <string>

#include "crsat/simd/kernels.hpp"

namespace crsat::simd {

#if !defined(CRSAT_BUILD_AVX2)
const Kernels* avx2_kernels() { return nullptr; }
#endif

bool cpu_supports(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(CRSAT_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
    }
    return false;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::Scalar};
    if (avx2_kernels() != nullptr && cpu_supports(Isa::Avx2)) out.push_back(Isa::Avx2);
    return out;
}

const Kernels& kernels(Isa isa) {
    if (isa == Isa::Scalar) return scalar_kernels();
    if (avx2_kernels() != nullptr && cpu_supports(Isa::Avx2)) return *avx2_kernels();
    throw std::runtime_error(std::string("kernel set '") + isa_name(isa) + "' is not available on this machine");
}

const Kernels& best_kernels() {
    static const Kernels& chosen = kernels(available_isas().back());
    return chosen;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace crsat::simd
