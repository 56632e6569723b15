#include "bpp/kernels.hpp"

#include <stdexcept>

namespace bpp::kernels {

namespace detail {
bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}
}  // namespace detail

namespace {
Isa g_active = detail::cpu_has_avx2() && detail::avx2_ops.sum_abs_pow ? Isa::avx2 : Isa::scalar;
}

Isa active() { return g_active; }

bool available(Isa isa) {
    if (isa == Isa::scalar) return true;
    return detail::cpu_has_avx2() && detail::avx2_ops.sum_abs_pow != nullptr;
}

void force(Isa isa) {
    if (!available(isa)) throw std::runtime_error("kernel lane unavailable: " + isa_name(isa));
    g_active = isa;
}

void reset_to_auto() { g_active = available(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const Ops& ops() { return g_active == Isa::avx2 ? detail::avx2_ops : detail::scalar_ops; }

}  // namespace bpp::kernels
