#include <gtest/gtest.h>

#include "bitjson/plan.hpp"

using namespace bitjson;

namespace {

EncodingPlan plan_of(std::string_view schema) {
    return build_plan(canonicalize(parse_json(schema)));
}

template <typename T>
const T& root_as(const EncodingPlan& p) {
    return std::get<T>(p.root().node);
}

}  // namespace

TEST(BuildPlan, ConstIsZeroBits) {
    const auto p = plan_of(R"({"const":42})");
    EXPECT_TRUE(json_equal(root_as<ConstPlan>(p).value, JsonValue(42)));
    EXPECT_EQ(plan_bit_bound(p), 0u);
}

TEST(BuildPlan, ChoiceIndexBits) {
    const auto p = plan_of(R"({"enum":[false,true]})");
    EXPECT_EQ(root_as<ChoicePlan>(p).index_bits, 1);
    std::string values;
    for (int i = 0; i < 256; ++i) values += (i ? "," : "") + std::to_string(i * 3);
    EXPECT_EQ(plan_bit_bound(plan_of("{\"enum\":[" + values + "]}")), 8u);
    EXPECT_EQ(root_as<ChoicePlan>(plan_of(R"({"enum":[1,2,3]})")).index_bits, 2);
}

TEST(BuildPlan, BoundedIntegers) {
    const auto& b = root_as<BoundedIntPlan>(plan_of(R"({"type":"integer","minimum":0,"maximum":255})"));
    EXPECT_EQ(b.min, 0);
    EXPECT_EQ(b.range_bits, 8);
    EXPECT_EQ(b.scale, 1);
    const auto& single = root_as<BoundedIntPlan>(plan_of(R"({"type":"integer","minimum":7,"maximum":7})"));
    EXPECT_EQ(single.range_bits, 0);
    // multiples of 5 in [5, 100]: 20 values -> 5 bits
    const auto& scaled = root_as<BoundedIntPlan>(plan_of(R"({"type":"integer","minimum":1,"maximum":100,"multipleOf":5})"));
    EXPECT_EQ(scaled.min, 5);
    EXPECT_EQ(scaled.scale, 5);
    EXPECT_EQ(scaled.range_bits, 5);
    const auto& full = root_as<BoundedIntPlan>(
        plan_of(R"({"type":"integer","minimum":-9223372036854775808,"maximum":9223372036854775807})"));
    EXPECT_EQ(full.range_bits, 64);
}

TEST(BuildPlan, VarIntOffsets) {
    EXPECT_EQ(root_as<VarIntPlan>(plan_of(R"({"type":"integer","minimum":3})")).base, VarIntBase::floor);
    EXPECT_EQ(root_as<VarIntPlan>(plan_of(R"({"type":"integer","maximum":3})")).base, VarIntBase::ceil);
    EXPECT_EQ(root_as<VarIntPlan>(plan_of(R"({"type":"integer"})")).base, VarIntBase::none);
    EXPECT_FALSE(plan_bit_bound(plan_of(R"({"type":"integer"})")));
}

TEST(BuildPlan, WildcardIsAny) {
    EXPECT_TRUE(std::holds_alternative<AnyPlan>(plan_of("{}").root().node));
    EXPECT_TRUE(std::holds_alternative<AnyPlan>(schemaless_plan().root().node));
}

TEST(BuildPlan, ObjectFieldsSorted) {
    const auto p = plan_of(R"({"properties":{"z":{},"b":{},"m":{"type":"null"}},"required":["z","m"]})");
    const auto& o = root_as<ObjectPlan>(p);
    ASSERT_EQ(o.required.size(), 2u);
    EXPECT_EQ(o.required[0].key, "m");
    EXPECT_EQ(o.required[1].key, "z");
    ASSERT_EQ(o.optional.size(), 1u);
    EXPECT_EQ(o.optional[0].key, "b");
    EXPECT_TRUE(o.additional);
}

TEST(BuildPlan, EightRequiredBooleansBoundIsSum) {
    std::string props;
    for (char k = 'a'; k < 'a' + 8; ++k) props += std::string(k == 'a' ? "" : ",") + "\"" + k + "\":{\"type\":\"boolean\"}";
    std::string required;
    for (char k = 'a'; k < 'a' + 8; ++k) required += std::string(k == 'a' ? "" : ",") + "\"" + k + "\"";
    const auto p = plan_of("{\"type\":\"object\",\"properties\":{" + props + "},\"required\":[" + required +
                           "],\"additionalProperties\":false}");
    std::uint64_t sum = 0;
    for (const auto& f : root_as<ObjectPlan>(p).required) sum += *plan_bit_bound(p, *f.plan);
    EXPECT_EQ(sum, 8u);
    EXPECT_EQ(plan_bit_bound(p), sum);
}

TEST(BuildPlan, ArraysAndUnions) {
    const auto fixed = plan_of(R"({"type":"array","items":{"type":"boolean"},"minItems":3,"maxItems":3})");
    EXPECT_EQ(root_as<ArrayPlan>(fixed).fixed_count, 3u);
    EXPECT_EQ(plan_bit_bound(fixed), 3u);
    const auto u = plan_of(R"({"type":["boolean","null","integer"]})");
    EXPECT_EQ(root_as<UnionPlan>(u).tag_bits, 2);
    EXPECT_FALSE(plan_bit_bound(u));
    EXPECT_EQ(plan_bit_bound(plan_of(R"({"type":["boolean","null"]})")), 2u);
}

TEST(BuildPlan, RecursiveRefHasNoBound) {
    const auto p = plan_of(R"({"$defs":{"t":{"type":"array","items":{"$ref":"#/$defs/t"},"minItems":1,"maxItems":1}},
                               "$ref":"#/$defs/t"})");
    EXPECT_TRUE(std::holds_alternative<RefPlan>(p.root().node));
    EXPECT_FALSE(plan_bit_bound(p));
}

TEST(BuildPlan, DeterministicAndDumpable) {
    const char* schema = R"({"type":"object","properties":{"a":{"enum":["x","y"]},"b":{"type":"integer","minimum":0}}})";
    EXPECT_EQ(minify(to_json(plan_of(schema))), minify(to_json(plan_of(schema))));
    const JsonValue dump = to_json(plan_of(R"({"const":1})"));
    EXPECT_EQ(minify(dump), R"({"root":{"plan":"const","value":1},"bit_bound":0})");
}
