#include "bitjson/kernels.hpp"

#include <arm_neon.h>

namespace bitjson::kernels {
namespace {

constexpr std::size_t kWidth = 16;

// One nibble per input byte; 0xF where the byte lane is set.
inline std::uint64_t nibble_mask(uint8x16_t m) {
    const uint8x8_t narrowed = vshrn_n_u16(vreinterpretq_u16_u8(m), 4);
    return vget_lane_u64(vreinterpret_u64_u8(narrowed), 0);
}

std::size_t find_escape(const std::uint8_t* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const uint8x16_t c = vld1q_u8(s + i);
        const uint8x16_t m = vorrq_u8(vorrq_u8(vceqq_u8(c, vdupq_n_u8('"')), vceqq_u8(c, vdupq_n_u8('\\'))),
                                      vcltq_u8(c, vdupq_n_u8(0x20)));
        const std::uint64_t mask = nibble_mask(m);
        if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctzll(mask) >> 2);
    }
    return i + detail::scalar_table.find_escape(s + i, n - i);
}

std::size_t ascii_prefix(const std::uint8_t* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const std::uint64_t mask = nibble_mask(vcgeq_u8(vld1q_u8(s + i), vdupq_n_u8(0x80)));
        if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctzll(mask) >> 2);
    }
    return i + detail::scalar_table.ascii_prefix(s + i, n - i);
}

std::size_t count_lead_bytes(const std::uint8_t* s, std::size_t n) {
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const int8x16_t c = vreinterpretq_s8_u8(vld1q_u8(s + i));
        const uint8x16_t lead = vandq_u8(vcgtq_s8(c, vdupq_n_s8(-65)), vdupq_n_u8(1));
        count += vaddvq_u8(lead);
    }
    return count + detail::scalar_table.count_lead_bytes(s + i, n - i);
}

void shift_append(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, unsigned shift) {
    if (n == 0) return;
    const unsigned back = 8 - shift;
    dst[0] = static_cast<std::uint8_t>(dst[0] | (src[0] >> shift));
    const int8x16_t left = vdupq_n_s8(static_cast<std::int8_t>(back));
    const int8x16_t right = vdupq_n_s8(static_cast<std::int8_t>(-static_cast<int>(shift)));
    std::size_t i = 1;
    for (; i + kWidth <= n; i += kWidth) {
        const uint8x16_t hi = vshlq_u8(vld1q_u8(src + i - 1), left);
        const uint8x16_t lo = vshlq_u8(vld1q_u8(src + i), right);
        vst1q_u8(dst + i, vorrq_u8(hi, lo));
    }
    for (; i < n; ++i) {
        dst[i] = static_cast<std::uint8_t>((src[i - 1] << back) | (src[i] >> shift));
    }
    dst[n] = static_cast<std::uint8_t>(src[n - 1] << back);
}

void shift_extract(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, unsigned shift) {
    const unsigned back = 8 - shift;
    const int8x16_t left = vdupq_n_s8(static_cast<std::int8_t>(shift));
    const int8x16_t right = vdupq_n_s8(static_cast<std::int8_t>(-static_cast<int>(back)));
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const uint8x16_t hi = vshlq_u8(vld1q_u8(src + i), left);
        const uint8x16_t lo = vshlq_u8(vld1q_u8(src + i + 1), right);
        vst1q_u8(dst + i, vorrq_u8(hi, lo));
    }
    detail::scalar_table.shift_extract(dst + i, src + i, n - i, shift);
}

}  // namespace

namespace detail {
const KernelTable neon_table{
    find_escape, ascii_prefix, count_lead_bytes, shift_append, shift_extract,
};
}  // namespace detail

}  // namespace bitjson::kernels
