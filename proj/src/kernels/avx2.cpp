// Compiled with -mavx2; only reached through dispatch after a CPUID check.
#include "bitjson/kernels.hpp"

#include <immintrin.h>

namespace bitjson::kernels {
namespace {

constexpr std::size_t kWidth = 32;

inline __m256i load(const std::uint8_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline unsigned movemask(__m256i v) {
    return static_cast<unsigned>(_mm256_movemask_epi8(v));
}

inline __m256i escape_mask(__m256i c) {
    const __m256i quote = _mm256_cmpeq_epi8(c, _mm256_set1_epi8('"'));
    const __m256i slash = _mm256_cmpeq_epi8(c, _mm256_set1_epi8('\\'));
    const __m256i control =
        _mm256_cmpeq_epi8(_mm256_subs_epu8(c, _mm256_set1_epi8(0x1F)), _mm256_setzero_si256());
    return _mm256_or_si256(_mm256_or_si256(quote, slash), control);
}

std::size_t find_escape(const std::uint8_t* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const unsigned mask = movemask(escape_mask(load(s + i)));
        if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(mask));
    }
    return i + detail::sse2_table.find_escape(s + i, n - i);
}

std::size_t ascii_prefix(const std::uint8_t* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const unsigned mask = movemask(load(s + i));
        if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(mask));
    }
    return i + detail::sse2_table.ascii_prefix(s + i, n - i);
}

std::size_t count_lead_bytes(const std::uint8_t* s, std::size_t n) {
    const __m256i threshold = _mm256_set1_epi8(-65);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        count += static_cast<std::size_t>(__builtin_popcount(movemask(_mm256_cmpgt_epi8(load(s + i), threshold))));
    }
    return count + detail::sse2_table.count_lead_bytes(s + i, n - i);
}

void shift_append(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, unsigned shift) {
    if (n == 0) return;
    const unsigned back = 8 - shift;
    dst[0] = static_cast<std::uint8_t>(dst[0] | (src[0] >> shift));
    const __m128i left_count = _mm_cvtsi32_si128(static_cast<int>(back));
    const __m128i right_count = _mm_cvtsi32_si128(static_cast<int>(shift));
    const __m256i left_mask = _mm256_set1_epi8(static_cast<char>((0xFFu << back) & 0xFFu));
    const __m256i right_mask = _mm256_set1_epi8(static_cast<char>(0xFFu >> shift));
    std::size_t i = 1;
    for (; i + kWidth <= n; i += kWidth) {
        const __m256i hi = _mm256_and_si256(_mm256_sll_epi16(load(src + i - 1), left_count), left_mask);
        const __m256i lo = _mm256_and_si256(_mm256_srl_epi16(load(src + i), right_count), right_mask);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(hi, lo));
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
    const __m256i left_mask = _mm256_set1_epi8(static_cast<char>((0xFFu << shift) & 0xFFu));
    const __m256i right_mask = _mm256_set1_epi8(static_cast<char>(0xFFu >> back));
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const __m256i hi = _mm256_and_si256(_mm256_sll_epi16(load(src + i), left_count), left_mask);
        const __m256i lo = _mm256_and_si256(_mm256_srl_epi16(load(src + i + 1), right_count), right_mask);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(hi, lo));
    }
    detail::sse2_table.shift_extract(dst + i, src + i, n - i, shift);
}

}  // namespace

namespace detail {
const KernelTable avx2_table{
    find_escape, ascii_prefix, count_lead_bytes, shift_append, shift_extract,
};
}  // namespace detail

}  // namespace bitjson::kernels
