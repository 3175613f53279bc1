#include <gtest/gtest.h>

#include <filesystem>
#include <limits>

#include "bitjson/codec.hpp"
#include "bitjson/error.hpp"
#include "bitjson/io.hpp"
#include "oracles.hpp"

using namespace bitjson;
namespace fs = std::filesystem;

namespace {

EncodingPlan plan_of(std::string_view schema) {
    return build_plan(canonicalize(parse_json(schema)));
}

DecodeFault decode_fault(const std::vector<std::uint8_t>& bytes, const EncodingPlan& plan) {
    try {
        decode(bytes, plan);
    } catch (const DecodeError& e) {
        return e.fault();
    }
    ADD_FAILURE() << "decoded without error: " << oracle::hex(bytes);
    return DecodeFault::bad_frame;
}

void expect_round_trip(const JsonValue& v, const EncodingPlan& plan) {
    const auto bytes = encode(v, plan);
    EXPECT_TRUE(json_equal(decode(bytes, plan), v)) << minify(v);
}

}  // namespace

TEST(Golden, HexVectors) {
    std::size_t checked = 0;
    for (const auto& entry : fs::directory_iterator(BITJSON_GOLDEN_DIR)) {
        if (entry.path().extension() != ".hex") continue;
        const fs::path base = entry.path().parent_path() / entry.path().stem();
        const JsonValue document = parse_json(read_file(base.string() + ".json"));
        const fs::path schema_path = base.string() + ".schema.json";
        const EncodingPlan plan = fs::exists(schema_path) ? build_plan(canonicalize(parse_json(read_file(schema_path))))
                                                          : schemaless_plan();
        const auto expected = oracle::unhex(read_file(entry.path()));
        const auto bytes = encode(document, plan);
        EXPECT_EQ(oracle::hex(bytes), oracle::hex(expected)) << base.filename();
        EXPECT_TRUE(json_equal(decode(expected, plan), document)) << base.filename();
        ++checked;
    }
    EXPECT_GE(checked, 15u);
}

TEST(Encode, ConstIsEmpty) {
    const auto plan = plan_of(R"({"const":42})");
    EXPECT_TRUE(encode(JsonValue(42), plan).empty());
    EXPECT_TRUE(json_equal(decode({}, plan), JsonValue(42)));
}

TEST(Encode, BoundedIntByte) {
    const auto plan = plan_of(R"({"type":"integer","minimum":0,"maximum":255})");
    const auto expected = oracle::Bits().put(200, 8).bytes();
    EXPECT_EQ(expected, std::vector<std::uint8_t>{0xC8});
    EXPECT_EQ(encode(JsonValue(200), plan), expected);
    EXPECT_EQ(decode(expected, plan).as_integer(), 200);
}

TEST(Encode, EightBooleansOneByte) {
    std::string props, required, doc;
    const bool values[8] = {true, false, true, true, false, false, true, false};
    oracle::Bits bits;
    for (int i = 0; i < 8; ++i) {
        const std::string key = std::string("k") + static_cast<char>('0' + i);
        props += (i ? "," : "") + ("\"" + key + "\":{\"type\":\"boolean\"}");
        required += (i ? "," : "") + ("\"" + key + "\"");
        doc += (i ? "," : "") + ("\"" + key + "\":" + (values[i] ? "true" : "false"));
        bits.put(values[i], 1);
    }
    const auto plan = plan_of("{\"type\":\"object\",\"properties\":{" + props + "},\"required\":[" + required +
                              "],\"additionalProperties\":false}");
    const auto bytes = encode(parse_json("{" + doc + "}"), plan);
    ASSERT_EQ(bytes.size(), 1u);
    EXPECT_EQ(bytes, bits.bytes());
}

TEST(Encode, ScaledAndOffsetIntegers) {
    const auto scaled = plan_of(R"({"type":"integer","minimum":10,"maximum":100,"multipleOf":10})");
    // (70 - 10) / 10 = 6 in bit_width(90 / 10) = 4 bits
    EXPECT_EQ(encode(JsonValue(70), scaled), oracle::Bits().put(6, 4).bytes());
    const auto ceil = plan_of(R"({"type":"integer","maximum":5})");
    EXPECT_EQ(encode(JsonValue(-295), ceil), oracle::Bits().put_leb128(300).bytes());
    const auto free = plan_of(R"({"type":"integer"})");
    EXPECT_EQ(encode(JsonValue(-3), free), oracle::Bits().put_leb128(oracle::zigzag(-3)).bytes());
    const std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    const std::int64_t hi = std::numeric_limits<std::int64_t>::max();
    for (const char* schema : {R"({"type":"integer"})", R"({"type":"integer","minimum":-9223372036854775808})",
                               R"({"type":"integer","maximum":9223372036854775807})",
                               R"({"type":"integer","minimum":-9223372036854775808,"maximum":9223372036854775807})"}) {
        const auto plan = plan_of(schema);
        for (std::int64_t v : {lo, lo + 1, std::int64_t{-1}, std::int64_t{0}, std::int64_t{1}, hi - 1, hi}) {
            expect_round_trip(JsonValue(v), plan);
        }
    }
}

TEST(Encode, RealsUseMantissaExponent) {
    const auto plan = plan_of(R"({"type":"number"})");
    // -0.0015 = -15 * 10^-4
    EXPECT_EQ(encode(parse_json("-0.0015"), plan),
              oracle::Bits().put_leb128(oracle::zigzag(-15)).put_leb128(oracle::zigzag(-4)).bytes());
    // integers go through the same normalized decimal: 1200 = 12 * 10^2
    EXPECT_EQ(encode(JsonValue(1200), plan),
              oracle::Bits().put_leb128(oracle::zigzag(12)).put_leb128(oracle::zigzag(2)).bytes());
    EXPECT_THROW(encode(parse_json("1.2345678901234567890123"), plan), EncodeError);
    // ANY keeps long mantissas
    expect_round_trip(parse_json("-1.2345678901234567890123e-40"), schemaless_plan());
}

TEST(Encode, SchemaMismatchNamesPath) {
    const auto plan = plan_of(R"({"type":"object","properties":{"a":{"type":"array","items":{"enum":[1,2]}}}})");
    try {
        encode(parse_json(R"({"a":[1,3]})"), plan);
        FAIL();
    } catch (const SchemaMismatch& e) {
        EXPECT_EQ(e.path(), "$.a[1]");
    }
}

TEST(Encode, OpenObjectsPoolKeys) {
    const auto plan = plan_of(R"({"type":"object","additionalProperties":{"type":"integer","minimum":0}})");
    const auto bytes = encode(parse_json(R"({"alpha":1,"beta":2})"), plan);
    const auto expected = oracle::Bits()
                              .put_leb128(2)
                              .put_leb128(6)
                              .put_text("alpha")
                              .put_leb128(1)
                              .put_leb128(5)
                              .put_text("beta")
                              .put_leb128(2)
                              .bytes();
    EXPECT_EQ(bytes, expected);
    expect_round_trip(parse_json(R"([{"k1":1,"k2":2},{"k2":3,"k1":4}])"),
                      plan_of(R"({"type":"array","items":{"additionalProperties":{"type":"integer"}}})"));
}

TEST(Encode, UnionPicksFirstValidatingBranch) {
    const auto plan = plan_of(R"({"anyOf":[{"type":"integer","minimum":0,"maximum":3},{"type":"integer"}]})");
    EXPECT_EQ(encode(JsonValue(2), plan), oracle::Bits().put(0, 1).put(2, 2).bytes());
    EXPECT_EQ(encode(JsonValue(9), plan), oracle::Bits().put(1, 1).put_leb128(oracle::zigzag(9)).bytes());
}

TEST(Any, TagTableBoundaries) {
    auto any = [](const JsonValue& v) { return encode_schemaless(v); };
    EXPECT_EQ(any(true), std::vector<std::uint8_t>{oracle::tag(5, 1)});
    EXPECT_EQ(any(false), std::vector<std::uint8_t>{oracle::tag(5, 0)});
    EXPECT_EQ(any(nullptr), std::vector<std::uint8_t>{oracle::tag(5, 2)});
    EXPECT_EQ(any(23), std::vector<std::uint8_t>{oracle::tag(0, 23)});
    EXPECT_EQ(any(24), (std::vector<std::uint8_t>{oracle::tag(0, 24), 24}));
    EXPECT_EQ(any(-24), std::vector<std::uint8_t>{oracle::tag(1, 23)});
    EXPECT_EQ(any(-25), (std::vector<std::uint8_t>{oracle::tag(1, 24), 24}));
    EXPECT_EQ(any(std::string(23, 'x')).size(), 24u);
    EXPECT_EQ(any(std::string(24, 'x')).size(), 26u);
    EXPECT_EQ(any(Array{}), std::vector<std::uint8_t>{oracle::tag(3, 0)});
    EXPECT_EQ(any(Object{}), std::vector<std::uint8_t>{oracle::tag(4, 0)});
}

TEST(Any, RepeatedStringBackReference) {
    // replay: "ab" is literal (tag + 2 bytes) then joins the pool at index 0
    const auto expected = oracle::Bits()
                              .put_byte(oracle::tag(3, 2))
                              .put_byte(oracle::tag(2, 2))
                              .put_text("ab")
                              .put_byte(oracle::tag(2, 31))
                              .put_leb128(0)
                              .bytes();
    EXPECT_EQ(encode_schemaless(parse_json(R"(["ab","ab"])")), expected);
    // single-byte strings never enter the pool
    EXPECT_EQ(encode_schemaless(parse_json(R"(["a","a"])")),
              (std::vector<std::uint8_t>{oracle::tag(3, 2), oracle::tag(2, 1), 'a', oracle::tag(2, 1), 'a'}));
}

TEST(Any, RepeatedStringSavingHolds) {
    for (std::size_t len : {2u, 3u, 30u, 200u}) {
        const std::string s(len, 'q');
        StringPool pool;
        BitWriter w;
        // fill the pool so the index needs more than one group
        for (int i = 0; i < 200; ++i) encode_any(JsonValue("filler" + std::to_string(i)), pool, w);
        encode_any(JsonValue(s), pool, w);
        const auto index = pool.find(s);
        ASSERT_TRUE(index);
        const std::uint64_t before = w.bit_size();
        encode_any(JsonValue(s), pool, w);
        const std::uint64_t second = (w.bit_size() - before) / 8;
        EXPECT_LE(second, 1 + uvarint_length(*index));
        EXPECT_LT(second, 1 + uvarint_length(len) + len);
    }
}

TEST(Any, EqualsWildcardPlan) {
    const JsonValue v = parse_json(R"({"a":[1,-2.5,"xy",{"xy":null}],"b":true})");
    EXPECT_EQ(encode(v, plan_of("{}")), encode_schemaless(v));
    StringPool pool;
    BitWriter w;
    encode_any(v, pool, w);
    EXPECT_EQ(std::move(w).finish(), encode_schemaless(v));
}

TEST(Decode, DistinctFaults) {
    const auto choice = plan_of(R"({"enum":["a","b","c"]})");
    EXPECT_EQ(decode_fault({0xC0}, choice), DecodeFault::invalid_choice);
    EXPECT_EQ(decode_fault({0x40 | 0x01}, choice), DecodeFault::nonzero_padding);
    EXPECT_EQ(decode_fault({0x40, 0x00}, choice), DecodeFault::trailing_data);
    EXPECT_EQ(decode_fault({}, choice), DecodeFault::truncated);
    const auto& any = schemaless_plan();
    EXPECT_EQ(decode_fault({oracle::tag(7, 0)}, any), DecodeFault::reserved_tag);
    EXPECT_EQ(decode_fault({oracle::tag(5, 9)}, any), DecodeFault::invalid_tag);
    EXPECT_EQ(decode_fault({oracle::tag(2, 31), 0}, any), DecodeFault::pool_index);
    EXPECT_EQ(decode_fault({oracle::tag(2, 1), 0xFF}, any), DecodeFault::malformed_utf8);
    EXPECT_EQ(decode_fault({oracle::tag(2, 5), 'a'}, any), DecodeFault::truncated);
    EXPECT_EQ(decode_fault({oracle::tag(0, 24), 0x80}, any), DecodeFault::truncated);
    EXPECT_EQ(decode_fault({oracle::tag(3, 24), 0xFF, 0xFF, 0x03}, any), DecodeFault::truncated);
    std::vector<std::uint8_t> huge{oracle::tag(0, 24)};
    for (int i = 0; i < 9; ++i) huge.push_back(0xFF);
    huge.push_back(0x01);  // 2^64 - 1 does not fit i64
    EXPECT_EQ(decode_fault(huge, any), DecodeFault::overflow);
    const auto bounded = plan_of(R"({"type":"integer","minimum":0,"maximum":4})");
    EXPECT_EQ(decode_fault({0xE0}, bounded), DecodeFault::invalid_value);  // 7 > 4
    const auto tagged = plan_of(R"({"type":["string","null","boolean"]})");
    EXPECT_EQ(decode_fault({0xC0}, tagged), DecodeFault::invalid_tag);
}

TEST(Decode, NestingLimit) {
    std::vector<std::uint8_t> deep(600, oracle::tag(3, 1));
    deep.push_back(oracle::tag(5, 2));
    EXPECT_EQ(decode_fault(deep, schemaless_plan()), DecodeFault::invalid_value);
}

TEST(Decode, DuplicateKeysRejected) {
    const std::vector<std::uint8_t> dup{oracle::tag(4, 2), oracle::tag(2, 1), 'k', 0xA1, oracle::tag(2, 1), 'k', 0xA0};
    EXPECT_EQ(decode_fault(dup, schemaless_plan()), DecodeFault::invalid_value);
}

TEST(Pool, SymmetricReplay) {
    const JsonValue v = parse_json(R"({"name":"ab","tags":["ab","cd","ab","x"],"ab":{"cd":"ef","ef":"ab"}})");
    std::vector<std::pair<std::size_t, std::string>> encoder_log, decoder_log;
    const auto bytes = encode(v, schemaless_plan(), [&](std::size_t i, const std::string& s) { encoder_log.emplace_back(i, s); });
    decode(bytes, schemaless_plan(), [&](std::size_t i, const std::string& s) { decoder_log.emplace_back(i, s); });
    EXPECT_EQ(encoder_log, decoder_log);
    ASSERT_FALSE(encoder_log.empty());
    EXPECT_EQ(encoder_log.front().second, "name");
}

TEST(Frame, HeaderRoundTrip) {
    const std::vector<std::uint8_t> payload{1, 2, 3};
    const auto framed = frame(Mode::schema_driven, payload);
    EXPECT_EQ(framed, (std::vector<std::uint8_t>{'B', 'J', '1', 1, 1, 2, 3}));
    const Framed back = unframe(framed);
    EXPECT_EQ(back.mode, Mode::schema_driven);
    EXPECT_EQ(back.payload, payload);
    EXPECT_THROW(unframe(std::vector<std::uint8_t>{'B', 'J', '2', 0}), DecodeError);
    EXPECT_THROW(unframe(std::vector<std::uint8_t>{'B', 'J', '1', 2}), DecodeError);
    EXPECT_THROW(unframe(std::vector<std::uint8_t>{'B', 'J'}), DecodeError);
}
