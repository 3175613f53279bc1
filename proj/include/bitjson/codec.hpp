#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bitjson/bitstream.hpp"
#include "bitjson/json_value.hpp"
#include "bitjson/plan.hpp"

namespace bitjson {

/// Append-only table of strings already sent in a session. Encoder and
/// decoder keep one each and grow them identically.
class StringPool {
public:
    /// Called with (index, string) whenever a string is appended.
    using Observer = std::function<void(std::size_t, const std::string&)>;

    static constexpr std::size_t min_length = 2;

    StringPool() = default;
    explicit StringPool(Observer observer) : observer_(std::move(observer)) {}

    std::optional<std::size_t> find(std::string_view s) const;
    const std::string& at(std::size_t index) const { return strings_.at(index); }
    std::size_t size() const noexcept { return strings_.size(); }
    const std::vector<std::string>& strings() const noexcept { return strings_; }

    /// Records a string after its literal emission. No-op for strings shorter
    /// than min_length or already present.
    void note(std::string_view s);

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
    };

    std::vector<std::string> strings_;
    std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
    Observer observer_;
};

/// Payload bytes for `value` under `plan`. Throws SchemaMismatch (with JSON
/// path) when the value does not conform, EncodeError for unrepresentable
/// numbers.
std::vector<std::uint8_t> encode(const JsonValue& value, const EncodingPlan& plan,
                                 const StringPool::Observer& observer = {});

/// Inverse of encode. Throws DecodeError.
JsonValue decode(std::span<const std::uint8_t> bytes, const EncodingPlan& plan,
                 const StringPool::Observer& observer = {});

/// Schema-less mode, i.e. encode/decode under schemaless_plan().
std::vector<std::uint8_t> encode_schemaless(const JsonValue& value);
JsonValue decode_schemaless(std::span<const std::uint8_t> bytes);

/// The tagged ANY layout at the writer's cursor.
void encode_any(const JsonValue& value, StringPool& pool, BitWriter& writer);
JsonValue decode_any(BitReader& reader, StringPool& pool, unsigned depth = 0);

/// Nesting limit enforced while decoding.
inline constexpr unsigned max_decode_depth = 512;

enum class Mode : std::uint8_t { schema_less = 0, schema_driven = 1 };

struct Framed {
    Mode mode;
    std::vector<std::uint8_t> payload;
};

/// "BJ1" + mode byte + payload. Used by the CLI only.
std::vector<std::uint8_t> frame(Mode mode, std::span<const std::uint8_t> payload);
/// Throws DecodeError(bad_frame).
Framed unframe(std::span<const std::uint8_t> bytes);

}  // namespace bitjson
