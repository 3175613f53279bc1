#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace bitjson {

class JsonValue;

struct Null {
    bool operator==(const Null&) const = default;
};

/// A non-integer (or out-of-literal-form) JSON number held as an exact
/// decimal: sign * digits * 10^exponent.
///
/// Normal form: `digits` has no leading or trailing zeros, except that zero
/// itself is {+1, "0", 0}.
struct Real {
    int sign = 1;
    std::string digits = "0";
    std::int32_t exponent = 0;

    bool is_zero() const noexcept { return digits == "0"; }

    /// Folds leading/trailing zeros of `digits` into the normal form. Returns
    /// nullopt when the resulting exponent leaves the 32-bit range.
    static std::optional<Real> normalized(int sign, std::string_view digits, std::int64_t exponent);

    /// Exact decimal of an integer, in normal form.
    static Real from_integer(std::int64_t value);

    /// The integer value if this decimal is integral and fits 64 bits.
    std::optional<std::int64_t> to_integer() const;

    bool operator==(const Real&) const = default;
};

using Array = std::vector<JsonValue>;

/// Object members in insertion order. Keys are unique.
class Object {
public:
    using Member = std::pair<std::string, JsonValue>;
    using const_iterator = std::vector<Member>::const_iterator;

    Object() = default;
    Object(std::initializer_list<Member> members);

    /// Appends a member. Returns false (and leaves the object unchanged) if the
    /// key is already present.
    bool insert(std::string key, JsonValue value);

    const JsonValue* find(std::string_view key) const;
    bool contains(std::string_view key) const { return find(key) != nullptr; }

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const_iterator begin() const noexcept { return members_.begin(); }
    const_iterator end() const noexcept { return members_.end(); }

private:
    std::vector<Member> members_;
};

enum class JsonKind { null, boolean, integer, real, string, array, object };

const char* to_string(JsonKind kind) noexcept;

class JsonValue {
public:
    using Storage = std::variant<Null, bool, std::int64_t, Real, std::string, Array, Object>;

    JsonValue() = default;
    JsonValue(std::nullptr_t) {}
    JsonValue(Null) {}
    JsonValue(bool b) : storage_(b) {}
    template <std::integral T>
        requires(!std::same_as<T, bool> && !std::same_as<T, char>)
    JsonValue(T n) : storage_(static_cast<std::int64_t>(n)) {}
    JsonValue(Real r) : storage_(std::move(r)) {}
    JsonValue(std::string s) : storage_(std::move(s)) {}
    JsonValue(std::string_view s) : storage_(std::string(s)) {}
    JsonValue(const char* s) : storage_(std::string(s)) {}
    JsonValue(Array a) : storage_(std::move(a)) {}
    JsonValue(Object o) : storage_(std::move(o)) {}

    JsonKind kind() const noexcept { return static_cast<JsonKind>(storage_.index()); }

    bool is_null() const noexcept { return kind() == JsonKind::null; }
    bool is_bool() const noexcept { return kind() == JsonKind::boolean; }
    bool is_integer() const noexcept { return kind() == JsonKind::integer; }
    bool is_real() const noexcept { return kind() == JsonKind::real; }
    bool is_number() const noexcept { return is_integer() || is_real(); }
    bool is_string() const noexcept { return kind() == JsonKind::string; }
    bool is_array() const noexcept { return kind() == JsonKind::array; }
    bool is_object() const noexcept { return kind() == JsonKind::object; }

    bool as_bool() const { return std::get<bool>(storage_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(storage_); }
    const Real& as_real() const { return std::get<Real>(storage_); }
    const std::string& as_string() const { return std::get<std::string>(storage_); }
    const Array& as_array() const { return std::get<Array>(storage_); }
    const Object& as_object() const { return std::get<Object>(storage_); }

    /// The number as an exact decimal (integers included).
    Real as_decimal() const;

    const Storage& storage() const noexcept { return storage_; }

private:
    Storage storage_;
};

/// Value equality: object member order is ignored, array order is not, and
/// numbers compare mathematically (Integer 25 equals Real 2.5e1).
bool json_equal(const JsonValue& a, const JsonValue& b);

/// Parses UTF-8 JSON text. Throws ParseError (with byte offset) on malformed
/// input and UnsupportedNumber for integer literals outside 64-bit range.
JsonValue parse_json(std::string_view text);

/// Shortest whitespace-free JSON text, keys in insertion order.
std::string minify(const JsonValue& value);

/// Indented rendering for human inspection.
std::string pretty(const JsonValue& value, int indent = 2);

/// Shortest decimal spelling of a Real that parses back to an equal value.
std::string format_real(const Real& real);

/// Appends `s` as a quoted, escaped JSON string.
void append_json_string(std::string& out, std::string_view s);

/// Strict UTF-8 validation (no overlongs, surrogates or values past U+10FFFF).
bool is_valid_utf8(std::string_view s) noexcept;

/// Number of Unicode code points in valid UTF-8.
std::size_t utf8_length(std::string_view s) noexcept;

}  // namespace bitjson
