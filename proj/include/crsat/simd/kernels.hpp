#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Bit-parallel word kernels for circuit simulation. Each kernel has a scalar
// reference version and, on x86-64, an AVX2 version; both must produce
// identical results for every length (including non-multiples of the vector
// width). Selection happens at runtime from the CPU's feature flags.
namespace crsat::simd {

enum class Isa { Scalar, Avx2 };

struct Kernels {
    Isa isa;
    const char* name;
    // dst[i] = src[i] ^ mask
    void (*copy_xor)(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t mask, std::size_t n);
    // dst[i] &= src[i] ^ mask
    void (*and_xor)(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t mask, std::size_t n);
    // any bit set in src[0..n)
    bool (*any)(const std::uint64_t* src, std::size_t n);
    // number of set bits in src[0..n)
    std::uint64_t (*popcount)(const std::uint64_t* src, std::size_t n);
};

const Kernels& scalar_kernels();
// nullptr when the AVX2 translation unit was not compiled in.
const Kernels* avx2_kernels();

bool cpu_supports(Isa isa);
std::vector<Isa> available_isas();
const Kernels& kernels(Isa isa);  // throws if unavailable
const Kernels& best_kernels();
const char* isa_name(Isa isa);

}  // namespace crsat::simd
