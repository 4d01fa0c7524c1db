#include "fluxlogic/kernels/dispatch.hpp"

#include <stdexcept>
#include <string>

namespace fluxlogic::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(FLUXLOGIC_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend& active_backend_slot() {
    static Backend b = preferred_backend();
    return b;
}

}  // namespace

const char* to_string(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

Backend preferred_backend() {
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

bool backend_available(Backend b) {
    return b == Backend::scalar || cpu_has_avx2();
}

Backend active_backend() {
    return active_backend_slot();
}

void set_active_backend(Backend b) {
    if (!backend_available(b))
        throw std::runtime_error(std::string("backend '") + to_string(b) +
                                 "' is not available on this CPU");
    active_backend_slot() = b;
}

void block_energies(const CompiledNetwork& cn, EnergyModel model, double tol,
                    std::uint64_t first, std::uint32_t count, double* out) {
    if (active_backend() == Backend::avx2)
        block_energies_avx2(cn, model, tol, first, count, out);
    else
        block_energies_scalar(cn, model, tol, first, count, out);
}

}  // namespace fluxlogic::kernels
