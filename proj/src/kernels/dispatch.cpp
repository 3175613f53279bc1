#include "bitjson/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace bitjson::kernels {
namespace {

bool cpu_supports(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return true;
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::sse2:
        return true;
    case Isa::avx2:
        return __builtin_cpu_supports("avx2");
#endif
#if defined(__aarch64__)
    case Isa::neon:
        return true;
#endif
    default:
        return false;
    }
}

const KernelTable* lookup(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return &detail::scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::sse2:
        return &detail::sse2_table;
    case Isa::avx2:
        return &detail::avx2_table;
#endif
#if defined(__aarch64__)
    case Isa::neon:
        return &detail::neon_table;
#endif
    default:
        return nullptr;
    }
}

Isa widest() noexcept {
    Isa best = Isa::scalar;
    for (Isa isa : {Isa::sse2, Isa::neon, Isa::avx2}) {
        if (lookup(isa) != nullptr && cpu_supports(isa)) best = isa;
    }
    return best;
}

std::atomic<Isa>& selected() {
    static std::atomic<Isa> isa{widest()};
    return isa;
}

}  // namespace

const char* to_string(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::sse2: return "sse2";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::sse2, Isa::avx2, Isa::neon}) {
        if (lookup(isa) != nullptr && cpu_supports(isa)) out.push_back(isa);
    }
    return out;
}

const KernelTable& table_for(Isa isa) {
    const KernelTable* table = lookup(isa);
    if (table == nullptr || !cpu_supports(isa)) {
        throw std::invalid_argument(std::string("kernel ISA not available: ") + to_string(isa));
    }
    return *table;
}

const KernelTable& active() {
    return *lookup(selected().load(std::memory_order_relaxed));
}

Isa active_isa() noexcept {
    return selected().load(std::memory_order_relaxed);
}

void select(Isa isa) {
    table_for(isa);
    selected().store(isa, std::memory_order_relaxed);
}

}  // namespace bitjson::kernels
