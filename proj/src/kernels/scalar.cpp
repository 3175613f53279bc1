#include "bitjson/kernels.hpp"

namespace bitjson::kernels {
namespace {

std::size_t find_escape(const std::uint8_t* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t c = s[i];
        if (c == '"' || c == '\\' || c < 0x20) return i;
    }
    return n;
}

std::size_t ascii_prefix(const std::uint8_t* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (s[i] >= 0x80) return i;
    }
    return n;
}

std::size_t count_lead_bytes(const std::uint8_t* s, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        count += (s[i] & 0xC0) != 0x80;
    }
    return count;
}

void shift_append(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, unsigned shift) {
    if (n == 0) return;
    const unsigned back = 8 - shift;
    dst[0] = static_cast<std::uint8_t>(dst[0] | (src[0] >> shift));
    for (std::size_t i = 1; i < n; ++i) {
        dst[i] = static_cast<std::uint8_t>((src[i - 1] << back) | (src[i] >> shift));
    }
    dst[n] = static_cast<std::uint8_t>(src[n - 1] << back);
}

void shift_extract(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, unsigned shift) {
    const unsigned back = 8 - shift;
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = static_cast<std::uint8_t>((src[i] << shift) | (src[i + 1] >> back));
    }
}

}  // namespace

namespace detail {
const KernelTable scalar_table{
    find_escape, ascii_prefix, count_lead_bytes, shift_append, shift_extract,
};
}  // namespace detail

}  // namespace bitjson::kernels
