#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bitjson/json_value.hpp"

namespace bitjson {

struct SchemaNode;
using SchemaPtr = std::shared_ptr<const SchemaNode>;

struct AnySchema {};

/// Deduplicated (by json_equal) in first-occurrence order; never empty.
struct EnumSchema {
    std::vector<JsonValue> values;
};

struct IntegerSchema {
    std::optional<std::int64_t> minimum;
    std::optional<std::int64_t> maximum;
    std::optional<std::int64_t> multiple_of;  // > 1 when present
};

struct NumberSchema {};

struct StringSchema {
    std::optional<std::uint32_t> max_length;  // in code points
};

struct BooleanSchema {};
struct NullSchema {};

struct ArraySchema {
    SchemaPtr items;
    std::vector<SchemaPtr> prefix;
    std::uint32_t min_items = 0;
    std::optional<std::uint32_t> max_items;
};

/// Property maps are ordered by key bytes. `additional == nullptr` means the
/// object is closed to undeclared keys.
struct ObjectSchema {
    std::map<std::string, SchemaPtr> required;
    std::map<std::string, SchemaPtr> optional;
    SchemaPtr additional;

    bool closed() const noexcept { return additional == nullptr; }
};

struct UnionSchema {
    std::vector<SchemaPtr> branches;
};

struct RefSchema {
    std::string name;
};

struct SchemaNode {
    using Variant = std::variant<AnySchema, EnumSchema, IntegerSchema, NumberSchema, StringSchema, BooleanSchema,
                                 NullSchema, ArraySchema, ObjectSchema, UnionSchema, RefSchema>;
    Variant node;
};

template <typename T>
SchemaPtr make_schema(T node) {
    return std::make_shared<const SchemaNode>(SchemaNode{std::move(node)});
}

/// A schema in normal form: a root node plus the named definitions its Ref
/// nodes point at.
struct CanonicalSchema {
    SchemaPtr root;
    std::map<std::string, SchemaPtr> definitions;

    const SchemaNode& resolve(const std::string& name) const;
};

bool operator==(const SchemaNode& a, const SchemaNode& b);
bool operator==(const CanonicalSchema& a, const CanonicalSchema& b);

/// Rewrites a JSON Schema document into normal form. Nodes using keywords
/// outside the supported subset become Any. Throws SchemaError (or
/// ReferenceError for unresolvable or remote "$ref").
CanonicalSchema canonicalize(const JsonValue& schema);

/// The wildcard schema `{}`.
CanonicalSchema any_schema();

bool is_any(const CanonicalSchema& schema) noexcept;

/// Canonical form rendered back as a JSON Schema document; canonicalizing it
/// again yields an identical CanonicalSchema.
JsonValue to_json(const CanonicalSchema& schema);

struct Violation {
    std::string path;
    std::string reason;
};

/// First constraint `value` breaks, with its JSON path ("$", "$.a[0]").
std::optional<Violation> find_violation(const CanonicalSchema& schema, const JsonValue& value);
std::optional<Violation> find_violation(const CanonicalSchema& schema, const SchemaNode& node,
                                        const JsonValue& value);

inline bool validate(const CanonicalSchema& schema, const JsonValue& value) {
    return !find_violation(schema, value);
}

inline bool validate(const CanonicalSchema& schema, const SchemaNode& node, const JsonValue& value) {
    return !find_violation(schema, node, value);
}

/// Appends ".key" or ["key"] to a "$"-rooted path.
void append_path_key(std::string& path, std::string_view key);

/// The integer a JSON number denotes, if it is integral and fits 64 bits.
std::optional<std::int64_t> integral_value(const JsonValue& value);

}  // namespace bitjson
