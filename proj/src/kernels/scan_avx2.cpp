#include "orbits/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace orbits::kernels::avx2 {

#if defined(__x86_64__) || defined(__i386__)

__attribute__((target("avx2,bmi"))) std::size_t find_first_not_equal(
    std::span<const std::uint8_t> data, std::uint8_t value) {
    const std::uint8_t* p = data.data();
    const std::size_t n = data.size();
    const __m256i needle = _mm256_set1_epi8(static_cast<char>(value));
    std::size_t i = 0;
    for (; i + 128 <= n; i += 128) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i + 32));
        const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i + 64));
        const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i + 96));
        const __m256i all = _mm256_and_si256(
            _mm256_and_si256(_mm256_cmpeq_epi8(a, needle), _mm256_cmpeq_epi8(b, needle)),
            _mm256_and_si256(_mm256_cmpeq_epi8(c, needle), _mm256_cmpeq_epi8(d, needle)));
        if (static_cast<std::uint32_t>(_mm256_movemask_epi8(all)) != 0xffffffffu) break;
    }
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, needle)));
        if (eq != 0xffffffffu) return i + static_cast<std::size_t>(_tzcnt_u32(~eq));
    }
    for (; i < n; ++i) {
        if (p[i] != value) return i;
    }
    return n;
}

#else

std::size_t find_first_not_equal(std::span<const std::uint8_t> data, std::uint8_t value) {
    return scalar::find_first_not_equal(data, value);
}

#endif

}  // namespace orbits::kernels::avx2
