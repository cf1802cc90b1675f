#include "orbits/kernels.hpp"

namespace orbits::kernels {

namespace scalar {

std::size_t find_first_not_equal(std::span<const std::uint8_t> data, std::uint8_t value) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i] != value) return i;
    }
    return data.size();
}

}  // namespace scalar

void mark_stride(std::span<std::uint8_t> data, std::size_t start, std::size_t stride) {
    for (std::size_t i = start; i < data.size(); i += stride) {
        if (data[i] != 0xff) ++data[i];
    }
}

}  // namespace orbits::kernels
