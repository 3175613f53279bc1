#include <gtest/gtest.h>

#include <ostream>
#include <random>

#include "bitjson/kernels.hpp"

using namespace bitjson;
using kernels::Isa;

namespace bitjson::kernels {
void PrintTo(Isa isa, std::ostream* os) {
    *os << to_string(isa);
}
}  // namespace bitjson::kernels

namespace {

std::vector<std::uint8_t> random_bytes(std::mt19937& rng, std::size_t n, int flavour) {
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) {
        switch (flavour) {
        case 0: b = static_cast<std::uint8_t>(rng()); break;
        case 1: b = static_cast<std::uint8_t>(0x20 + rng() % 0x5F); break;  // printable, may contain '"' '\\'
        case 2: b = static_cast<std::uint8_t>('a' + rng() % 26); break;
        default: b = static_cast<std::uint8_t>(rng() % 4 == 0 ? 0x80 + rng() % 64 : 'a'); break;
        }
    }
    // plant a hit near the tail sometimes so vector tails are exercised
    if (n > 0 && rng() % 3 == 0) out[rng() % n] = "\"\\\x01\xC3"[rng() % 4];
    return out;
}

class KernelEquivalence : public ::testing::TestWithParam<Isa> {};

}  // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
    const auto isas = kernels::available_isas();
    ASSERT_FALSE(isas.empty());
    EXPECT_EQ(isas.front(), Isa::scalar);
    EXPECT_EQ(kernels::active_isa(), isas.back());
}

TEST(Kernels, ScalarReferenceSemantics) {
    const auto& k = kernels::table_for(Isa::scalar);
    const std::string s = "abc\"def";
    EXPECT_EQ(k.find_escape(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()), 3u);
    const std::string u = "ab\xC3\xA9";
    EXPECT_EQ(k.ascii_prefix(reinterpret_cast<const std::uint8_t*>(u.data()), u.size()), 2u);
    EXPECT_EQ(k.count_lead_bytes(reinterpret_cast<const std::uint8_t*>(u.data()), u.size()), 3u);
    std::uint8_t dst[3] = {0xA0, 0, 0};  // "101" occupied
    const std::uint8_t src[2] = {0xFF, 0x0F};
    k.shift_append(dst, src, 2, 3);
    EXPECT_EQ(dst[0], 0xBF);  // 101 11111
    EXPECT_EQ(dst[1], 0xE1);  // 111 00001
    EXPECT_EQ(dst[2], 0xE0);  // 111 00000
    std::uint8_t back[2] = {};
    k.shift_extract(back, dst, 2, 3);
    EXPECT_EQ(back[0], 0xFF);
    EXPECT_EQ(back[1], 0x0F);
}

TEST_P(KernelEquivalence, ScanKernelsMatchScalar) {
    const auto& ref = kernels::table_for(Isa::scalar);
    const auto& simd = kernels::table_for(GetParam());
    std::mt19937 rng(11);
    for (int iter = 0; iter < 4000; ++iter) {
        const std::size_t n = rng() % 300;
        const auto bytes = random_bytes(rng, n + 8, iter % 4);
        const std::size_t offset = rng() % 8;  // unaligned starts
        const std::uint8_t* p = bytes.data() + offset;
        const std::size_t len = std::min(n, bytes.size() - offset);
        ASSERT_EQ(simd.find_escape(p, len), ref.find_escape(p, len));
        ASSERT_EQ(simd.ascii_prefix(p, len), ref.ascii_prefix(p, len));
        ASSERT_EQ(simd.count_lead_bytes(p, len), ref.count_lead_bytes(p, len));
    }
}

TEST_P(KernelEquivalence, ShiftKernelsMatchScalar) {
    const auto& ref = kernels::table_for(Isa::scalar);
    const auto& simd = kernels::table_for(GetParam());
    std::mt19937 rng(13);
    for (int iter = 0; iter < 4000; ++iter) {
        const std::size_t n = rng() % 200;
        const unsigned shift = 1 + rng() % 7;
        const auto src = random_bytes(rng, n + 1, 0);
        const std::uint8_t head = static_cast<std::uint8_t>(rng() & (0xFF00u >> shift));

        std::vector<std::uint8_t> a(n + 1, 0), b(n + 1, 0);
        a[0] = b[0] = head;
        ref.shift_append(a.data(), src.data(), n, shift);
        simd.shift_append(b.data(), src.data(), n, shift);
        ASSERT_EQ(a, b) << "append n=" << n << " shift=" << shift;

        std::vector<std::uint8_t> x(n), y(n);
        ref.shift_extract(x.data(), src.data(), n, shift);
        simd.shift_extract(y.data(), src.data(), n, shift);
        ASSERT_EQ(x, y) << "extract n=" << n << " shift=" << shift;
    }
}

TEST_P(KernelEquivalence, SelectSwitchesActiveTable) {
    const Isa before = kernels::active_isa();
    kernels::select(GetParam());
    EXPECT_EQ(kernels::active_isa(), GetParam());
    EXPECT_EQ(&kernels::active(), &kernels::table_for(GetParam()));
    kernels::select(before);
}

INSTANTIATE_TEST_SUITE_P(AllIsas, KernelEquivalence, ::testing::ValuesIn(kernels::available_isas()),
                         [](const ::testing::TestParamInfo<Isa>& info) { return kernels::to_string(info.param); });
