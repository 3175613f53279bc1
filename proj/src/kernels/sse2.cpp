#include "bitjson/kernels.hpp"

#include <emmintrin.h>

namespace bitjson::kernels {
namespace {

constexpr std::size_t kWidth = 16;

inline __m128i load(const std::uint8_t* p) {
    return _mm_loadu_si128(reinterpret_cast<const __m128i*>(p));
}

inline __m128i escape_mask(__m128i c) {
    const __m128i quote = _mm_cmpeq_epi8(c, _mm_set1_epi8('"'));
    const __m128i slash = _mm_cmpeq_epi8(c, _mm_set1_epi8('\\'));
    // c < 0x20 unsigned <=> saturating (c - 0x1F) == 0
    const __m128i control = _mm_cmpeq_epi8(_mm_subs_epu8(c, _mm_set1_epi8(0x1F)), _mm_setzero_si128());
    return _mm_or_si128(_mm_or_si128(quote, slash), control);
}

std::size_t find_escape(const std::uint8_t* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const unsigned mask = static_cast<unsigned>(_mm_movemask_epi8(escape_mask(load(s + i))));
        if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(mask));
    }
    return i + detail::scalar_table.find_escape(s + i, n - i);
}

std::size_t ascii_prefix(const std::uint8_t* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const unsigned mask = static_cast<unsigned>(_mm_movemask_epi8(load(s + i)));
        if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(mask));
    }
    return i + detail::scalar_table.ascii_prefix(s + i, n - i);
}

std::size_t count_lead_bytes(const std::uint8_t* s, std::size_t n) {
    // continuation bytes are 0x80..0xBF, i.e. -128..-65 as signed
    const __m128i threshold = _mm_set1_epi8(-65);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const __m128i lead = _mm_cmpgt_epi8(load(s + i), threshold);
        count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(_mm_movemask_epi8(lead))));
    }
    return count + detail::scalar_table.count_lead_bytes(s + i, n - i);
}

void shift_append(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, unsigned shift) {
    if (n == 0) return;
    const unsigned back = 8 - shift;
    dst[0] = static_cast<std::uint8_t>(dst[0] | (src[0] >> shift));
    const __m128i left_count = _mm_cvtsi32_si128(static_cast<int>(back));
    const __m128i right_count = _mm_cvtsi32_si128(static_cast<int>(shift));
    const __m128i left_mask = _mm_set1_epi8(static_cast<char>((0xFFu << back) & 0xFFu));
    const __m128i right_mask = _mm_set1_epi8(static_cast<char>(0xFFu >> shift));
    std::size_t i = 1;
    for (; i + kWidth <= n; i += kWidth) {
        const __m128i hi = _mm_and_si128(_mm_sll_epi16(load(src + i - 1), left_count), left_mask);
        const __m128i lo = _mm_and_si128(_mm_srl_epi16(load(src + i), right_count), right_mask);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm_or_si128(hi, lo));
    }
    for (; i < n; ++i) {
        dst[i] = static_cast<std::uint8_t>((src[i - 1] << back) | (src[i] >> shift));
    }
    dst[n] = static_cast<std::uint8_t>(src[n - 1] << back);
}

void shift_extract(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, unsigned shift) {
    const unsigned back = 8 - shift;
    const __m128i left_count = _mm_cvtsi32_si128(static_cast<int>(shift));
    const __m128i right_count = _mm_cvtsi32_si128(static_cast<int>(back));
    const __m128i left_mask = _mm_set1_epi8(static_cast<char>((0xFFu << shift) & 0xFFu));
    const __m128i right_mask = _mm_set1_epi8(static_cast<char>(0xFFu >> back));
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const __m128i hi = _mm_and_si128(_mm_sll_epi16(load(src + i), left_count), left_mask);
        const __m128i lo = _mm_and_si128(_mm_srl_epi16(load(src + i + 1), right_count), right_mask);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm_or_si128(hi, lo));
    }
    detail::scalar_table.shift_extract(dst + i, src + i, n - i, shift);
}

}  // namespace

namespace detail {
const KernelTable sse2_table{
    find_escape, ascii_prefix, count_lead_bytes, shift_append, shift_extract,
};
}  // namespace detail

}  // namespace bitjson::kernels
