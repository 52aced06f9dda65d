// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "crsat/simd/kernels.hpp"

namespace crsat::simd {

namespace {

inline __m256i load(const std::uint64_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(std::uint64_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void copy_xor(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t mask, std::size_t n) {
    const __m256i m = _mm256_set1_epi64x(static_cast<long long>(mask));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_xor_si256(load(src + i), m));
    for (; i < n; ++i) dst[i] = src[i] ^ mask;
}

void and_xor(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t mask, std::size_t n) {
    const __m256i m = _mm256_set1_epi64x(static_cast<long long>(mask));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_and_si256(load(dst + i), _mm256_xor_si256(load(src + i), m)));
    for (; i < n; ++i) dst[i] &= src[i] ^ mask;
}

bool any(const std::uint64_t* src, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_or_si256(acc, load(src + i));
    std::uint64_t tail = 0;
    for (; i < n; ++i) tail |= src[i];
    return !_mm256_testz_si256(acc, acc) || tail != 0;
}

// Nibble lookup popcount (vpshufb), summed per 64-bit lane with vpsadbw.
std::uint64_t popcount(const std::uint64_t* src, std::size_t n) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i total = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = load(src + i);
        __m256i lo = _mm256_shuffle_epi8(lut, _mm256_and_si256(v, low));
        __m256i hi = _mm256_shuffle_epi8(lut, _mm256_and_si256(_mm256_srli_epi16(v, 4), low));
        total = _mm256_add_epi64(total, _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), total);
    std::uint64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) sum += static_cast<std::uint64_t>(std::popcount(src[i]));
    return sum;
}

constexpr Kernels kAvx2{Isa::Avx2, "avx2", copy_xor, and_xor, any, popcount};

}  // namespace

const Kernels* avx2_kernels() { return &kAvx2; }

}  // namespace crsat::simd
