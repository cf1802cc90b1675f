#pragma once

// Byte-table scan kernels behind the residue-table cover check. Every kernel
// has a scalar reference and vector variants; the variant is picked once at
// runtime from the CPU (override with ORBITS_SIMD=scalar|avx2|neon).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace orbits::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

/// Best variant this CPU and build support.
Isa detected_isa();
/// Variant currently used by the dispatching entry points.
Isa active_isa();
/// Forces a variant (tests). Throws PreconditionError if unsupported here.
void set_active_isa(Isa isa);
bool isa_supported(Isa isa);

/// Index of the first byte != value, or data.size() when none.
std::size_t find_first_not_equal(std::span<const std::uint8_t> data, std::uint8_t value);

/// Adds 1 (saturating at 255) to data[start], data[start+stride], ...
void mark_stride(std::span<std::uint8_t> data, std::size_t start, std::size_t stride);

namespace scalar {
std::size_t find_first_not_equal(std::span<const std::uint8_t> data, std::uint8_t value);
}

namespace avx2 {
/// Only callable when isa_supported(Isa::avx2).
std::size_t find_first_not_equal(std::span<const std::uint8_t> data, std::uint8_t value);
}

namespace neon {
/// Only callable when isa_supported(Isa::neon).
std::size_t find_first_not_equal(std::span<const std::uint8_t> data, std::uint8_t value);
}

}  // namespace orbits::kernels
