#include "orbits/errors.hpp"
#include "orbits/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace orbits::kernels {

std::string_view to_string(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("bmi");
#else
            return false;
#endif
        case Isa::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa detected_isa() {
    if (isa_supported(Isa::avx2)) return Isa::avx2;
    if (isa_supported(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

namespace {

Isa initial_isa() {
    if (const char* env = std::getenv("ORBITS_SIMD")) {
        const std::string_view name(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (name == to_string(isa) && isa_supported(isa)) return isa;
        }
    }
    return detected_isa();
}

std::atomic<Isa>& active() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (!isa_supported(isa)) {
        throw PreconditionError("SIMD variant " + std::string(to_string(isa)) +
                                " is not supported on this CPU/build");
    }
    active().store(isa, std::memory_order_relaxed);
}

std::size_t find_first_not_equal(std::span<const std::uint8_t> data, std::uint8_t value) {
    switch (active_isa()) {
        case Isa::avx2: return avx2::find_first_not_equal(data, value);
        case Isa::neon: return neon::find_first_not_equal(data, value);
        case Isa::scalar: break;
    }
    return scalar::find_first_not_equal(data, value);
}

}  // namespace orbits::kernels
