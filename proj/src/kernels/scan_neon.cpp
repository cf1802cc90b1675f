#include "orbits/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace orbits::kernels::neon {

#if defined(__aarch64__)

std::size_t find_first_not_equal(std::span<const std::uint8_t> data, std::uint8_t value) {
    const std::uint8_t* p = data.data();
    const std::size_t n = data.size();
    const uint8x16_t needle = vdupq_n_u8(value);
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        const uint8x16_t eq = vceqq_u8(vld1q_u8(p + i), needle);
        if (vminvq_u8(eq) != 0xff) break;
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

}  // namespace orbits::kernels::neon
