#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bitjson/json_value.hpp"
#include "bitjson/schema.hpp"

namespace bitjson {

struct PlanNode;
using PlanPtr = std::shared_ptr<const PlanNode>;

/// Fully determined value: zero bits on the wire.
struct ConstPlan {
    JsonValue value;
};

/// One of N >= 2 values, sent as its declaration index in index_bits bits.
struct ChoicePlan {
    std::vector<JsonValue> values;
    std::uint8_t index_bits = 0;
};

/// (v - min) / scale in range_bits bits.
struct BoundedIntPlan {
    std::int64_t min = 0;
    std::int64_t max = 0;
    std::int64_t scale = 1;
    std::uint8_t range_bits = 0;
};

enum class VarIntBase { none, floor, ceil };

/// floor: uvarint(v - offset); ceil: uvarint(offset - v); none: uvarint(zigzag(v)).
struct VarIntPlan {
    VarIntBase base = VarIntBase::none;
    std::int64_t offset = 0;
};

/// uvarint(zigzag(signed mantissa)) then uvarint(zigzag(exponent)).
struct RealPlan {};

struct StringPlan {
    std::optional<std::uint32_t> max_length;
};

struct BoolPlan {};
struct NullPlan {};

struct ArrayPlan {
    PlanPtr element;
    std::vector<PlanPtr> prefix;
    std::optional<std::uint32_t> fixed_count;
    std::uint32_t min_count = 0;
    std::optional<std::uint32_t> max_count;
};

struct FieldPlan {
    std::string key;
    PlanPtr plan;
};

/// `additional == nullptr` means closed.
struct ObjectPlan {
    std::vector<FieldPlan> required;
    std::vector<FieldPlan> optional;
    PlanPtr additional;
};

struct UnionBranch {
    SchemaPtr guard;
    PlanPtr plan;
};

struct UnionPlan {
    std::vector<UnionBranch> branches;
    std::uint8_t tag_bits = 0;
};

/// Self-describing tagged layout (the schema-less encoding).
struct AnyPlan {};

struct RefPlan {
    std::string name;
};

struct PlanNode {
    using Variant = std::variant<ConstPlan, ChoicePlan, BoundedIntPlan, VarIntPlan, RealPlan, StringPlan, BoolPlan,
                                 NullPlan, ArrayPlan, ObjectPlan, UnionPlan, AnyPlan, RefPlan>;
    Variant node;
};

/// Compiled, immutable program for one schema. Safe to share across threads.
class EncodingPlan {
public:
    EncodingPlan(PlanPtr root, std::map<std::string, PlanPtr> definitions,
                 std::shared_ptr<const CanonicalSchema> schema);

    const PlanNode& root() const noexcept { return *root_; }
    const std::map<std::string, PlanPtr>& definitions() const noexcept { return definitions_; }
    const PlanNode& resolve(const std::string& name) const;

    /// The canonical schema the plan was built from (union guards refer to it).
    const CanonicalSchema& schema() const noexcept { return *schema_; }

private:
    PlanPtr root_;
    std::map<std::string, PlanPtr> definitions_;
    std::shared_ptr<const CanonicalSchema> schema_;
};

EncodingPlan build_plan(const CanonicalSchema& schema);

/// The plan for `{}`: every value goes through the tagged ANY layout.
const EncodingPlan& schemaless_plan();

/// Exact worst-case payload size in bits when it is statically known.
std::optional<std::uint64_t> plan_bit_bound(const EncodingPlan& plan);
std::optional<std::uint64_t> plan_bit_bound(const EncodingPlan& plan, const PlanNode& node);

/// Plan tree rendered as JSON for auditing.
JsonValue to_json(const EncodingPlan& plan);

/// ceil(log2(n)) for n >= 1.
std::uint8_t bits_for_count(std::uint64_t n) noexcept;

}  // namespace bitjson
