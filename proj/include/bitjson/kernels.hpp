#pragma once

// Byte-parallel inner loops used by the JSON text layer and the bitstream.
//
// Every kernel has a scalar reference implementation; SIMD variants must
// produce identical results for every input and are chosen at runtime from
// what the host CPU supports.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bitjson::kernels {

enum class Isa { scalar, sse2, avx2, neon };

const char* to_string(Isa isa) noexcept;

struct KernelTable {
    /// Index of the first byte that must be escaped inside a JSON string
    /// ('"', '\\' or a control byte below 0x20); `n` if there is none.
    std::size_t (*find_escape)(const std::uint8_t* s, std::size_t n);

    /// Index of the first byte >= 0x80; `n` if the input is all ASCII.
    std::size_t (*ascii_prefix)(const std::uint8_t* s, std::size_t n);

    /// Number of bytes that are not UTF-8 continuation bytes (10xxxxxx).
    std::size_t (*count_lead_bytes)(const std::uint8_t* s, std::size_t n);

    /// Appends `n` source bytes to a bit stream whose last byte `dst[0]` has
    /// `shift` (1..7) bits occupied, MSB first. Writes dst[0..n]; bits of
    /// dst[0] below the occupied prefix must be zero on entry.
    void (*shift_append)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, unsigned shift);

    /// Reads `n` bytes starting `shift` (1..7) bits into src[0]. Reads
    /// src[0..n].
    void (*shift_extract)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, unsigned shift);
};

/// ISAs compiled into this build and supported by the running CPU, scalar
/// first.
std::vector<Isa> available_isas();

/// Kernels for a specific ISA. Throws std::invalid_argument if unavailable.
const KernelTable& table_for(Isa isa);

/// The table selected for this process (widest available ISA).
const KernelTable& active();
Isa active_isa() noexcept;

/// Overrides the process-wide selection. Not thread-safe with concurrent
/// kernel use; intended for tests and diagnostics.
void select(Isa isa);

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable sse2_table;
extern const KernelTable avx2_table;
#endif
#if defined(__aarch64__)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace bitjson::kernels
