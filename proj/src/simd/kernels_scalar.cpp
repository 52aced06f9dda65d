#include <bit>

#include "crsat/simd/kernels.hpp"

namespace crsat::simd {

namespace {

void copy_xor(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t mask, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] ^ mask;
}

void and_xor(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t mask, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] &= src[i] ^ mask;
}

bool any(const std::uint64_t* src, std::size_t n) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc |= src[i];
    return acc != 0;
}

std::uint64_t popcount(const std::uint64_t* src, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(src[i]));
    return total;
}

constexpr Kernels kScalar{Isa::Scalar, "scalar", copy_xor, and_xor, any, popcount};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace crsat::simd
