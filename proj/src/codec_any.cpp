#include <cstring>
#include <limits>

#include "bitjson/error.hpp"
#include "codec_internal.hpp"

namespace bitjson {

std::optional<std::size_t> StringPool::find(std::string_view s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void StringPool::note(std::string_view s) {
    if (s.size() < min_length || index_.contains(s)) return;
    const std::size_t index = strings_.size();
    strings_.emplace_back(s);
    index_.emplace(strings_.back(), index);
    if (observer_) observer_(index, strings_.back());
}

namespace detail {

std::optional<std::int64_t> real_mantissa(const Real& r) {
    if (r.digits.size() > 19) return std::nullopt;
    std::uint64_t magnitude = 0;
    for (char c : r.digits) {
        const std::uint64_t d = static_cast<std::uint64_t>(c - '0');
        if (magnitude > (std::numeric_limits<std::uint64_t>::max() - d) / 10) return std::nullopt;
        magnitude = magnitude * 10 + d;
    }
    constexpr std::uint64_t limit = std::uint64_t{1} << 63;
    if (r.sign < 0) {
        if (magnitude > limit) return std::nullopt;
        return static_cast<std::int64_t>(0 - magnitude);
    }
    if (magnitude >= limit) return std::nullopt;
    return static_cast<std::int64_t>(magnitude);
}

Real real_from_parts(std::int64_t mantissa, std::int64_t exponent) {
    const bool negative = mantissa < 0;
    const std::uint64_t magnitude =
        negative ? 0 - static_cast<std::uint64_t>(mantissa) : static_cast<std::uint64_t>(mantissa);
    auto r = Real::normalized(negative ? -1 : 1, std::to_string(magnitude), exponent);
    if (!r) throw DecodeError(DecodeFault::invalid_value, "real exponent out of range");
    return *r;
}

void write_string_bytes(BitWriter& w, std::string_view s) {
    w.write_bytes({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
}

std::string read_string_bytes(BitReader& r, std::uint64_t length) {
    if (length > r.remaining() / 8) throw DecodeError(DecodeFault::truncated, "string longer than the stream");
    std::string s(length, '\0');
    r.read_bytes({reinterpret_cast<std::uint8_t*>(s.data()), s.size()});
    if (!is_valid_utf8(s)) throw DecodeError(DecodeFault::malformed_utf8, "string is not valid UTF-8");
    return s;
}

void write_pooled_string(BitWriter& w, StringPool& pool, std::string_view s) {
    if (auto index = pool.find(s)) {
        w.write_uvarint(0);
        w.write_uvarint(*index);
        return;
    }
    w.write_uvarint(static_cast<std::uint64_t>(s.size()) + 1);
    write_string_bytes(w, s);
    pool.note(s);
}

std::string read_pooled_string(BitReader& r, StringPool& pool) {
    const std::uint64_t head = r.read_uvarint();
    if (head == 0) {
        const std::uint64_t index = r.read_uvarint();
        if (index >= pool.size()) throw DecodeError(DecodeFault::pool_index, "string reference " + std::to_string(index));
        return pool.at(index);
    }
    std::string s = read_string_bytes(r, head - 1);
    pool.note(s);
    return s;
}

}  // namespace detail

namespace {

enum Major : std::uint8_t {
    major_uint = 0,
    major_negative = 1,
    major_string = 2,
    major_array = 3,
    major_object = 4,
    major_simple = 5,
    major_real = 6,
    major_reserved = 7,
};

constexpr std::uint8_t small_varint = 24;
constexpr std::uint8_t small_pool_ref = 31;

constexpr std::uint8_t simple_false = 0;
constexpr std::uint8_t simple_true = 1;
constexpr std::uint8_t simple_null = 2;

// major 6 small field: 0 = i64 mantissa, 1/2 = long positive/negative digit string
constexpr std::uint8_t real_short = 0;
constexpr std::uint8_t real_long_positive = 1;
constexpr std::uint8_t real_long_negative = 2;

void write_head(BitWriter& w, Major major, std::uint64_t n) {
    if (n < small_varint) {
        w.write_bits((major << 5) | n, 8);
    } else {
        w.write_bits((major << 5) | small_varint, 8);
        w.write_uvarint(n);
    }
}

void write_any_string(BitWriter& w, StringPool& pool, std::string_view s) {
    if (auto index = pool.find(s)) {
        w.write_bits((major_string << 5) | small_pool_ref, 8);
        w.write_uvarint(*index);
        return;
    }
    write_head(w, major_string, s.size());
    detail::write_string_bytes(w, s);
    pool.note(s);
}

void write_real(BitWriter& w, const Real& r) {
    if (auto mantissa = detail::real_mantissa(r)) {
        w.write_bits((major_real << 5) | real_short, 8);
        w.write_uvarint(zigzag(*mantissa));
    } else {
        w.write_bits((major_real << 5) | (r.sign < 0 ? real_long_negative : real_long_positive), 8);
        w.write_uvarint(r.digits.size());
        detail::write_string_bytes(w, r.digits);
    }
    w.write_uvarint(zigzag(r.exponent));
}

struct AnyEncoder {
    StringPool& pool;
    BitWriter& w;

    void operator()(const Null&) const { w.write_bits((major_simple << 5) | simple_null, 8); }
    void operator()(bool b) const { w.write_bits((major_simple << 5) | (b ? simple_true : simple_false), 8); }
    void operator()(std::int64_t n) const {
        if (n >= 0) {
            write_head(w, major_uint, static_cast<std::uint64_t>(n));
        } else {
            write_head(w, major_negative, ~static_cast<std::uint64_t>(n));  // -1 - n
        }
    }
    void operator()(const Real& r) const { write_real(w, r); }
    void operator()(const std::string& s) const { write_any_string(w, pool, s); }
    void operator()(const Array& a) const {
        write_head(w, major_array, a.size());
        for (const auto& item : a) encode_any(item, pool, w);
    }
    void operator()(const Object& o) const {
        write_head(w, major_object, o.size());
        for (const auto& [key, value] : o) {
            write_any_string(w, pool, key);
            encode_any(value, pool, w);
        }
    }
};

std::uint64_t read_count(BitReader& r, std::uint8_t small) {
    if (small < small_varint) return small;
    if (small == small_varint) return r.read_uvarint();
    throw DecodeError(DecodeFault::invalid_tag, "small field " + std::to_string(small));
}

std::string read_any_string(BitReader& r, StringPool& pool, std::uint8_t small) {
    if (small == small_pool_ref) {
        const std::uint64_t index = r.read_uvarint();
        if (index >= pool.size()) throw DecodeError(DecodeFault::pool_index, "string reference " + std::to_string(index));
        return pool.at(index);
    }
    std::string s = detail::read_string_bytes(r, read_count(r, small));
    pool.note(s);
    return s;
}

Real read_real(BitReader& r, std::uint8_t small) {
    if (small == real_short) {
        const std::int64_t mantissa = unzigzag(r.read_uvarint());
        return detail::real_from_parts(mantissa, unzigzag(r.read_uvarint()));
    }
    if (small != real_long_positive && small != real_long_negative) {
        throw DecodeError(DecodeFault::invalid_tag, "real form " + std::to_string(small));
    }
    const std::uint64_t length = r.read_uvarint();
    if (length > r.remaining() / 8) throw DecodeError(DecodeFault::truncated, "real digits");
    std::string digits(length, '\0');
    r.read_bytes({reinterpret_cast<std::uint8_t*>(digits.data()), digits.size()});
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw DecodeError(DecodeFault::invalid_value, "real digits");
    }
    auto real = Real::normalized(small == real_long_negative ? -1 : 1, digits, unzigzag(r.read_uvarint()));
    if (!real) throw DecodeError(DecodeFault::invalid_value, "real exponent out of range");
    return *real;
}

}  // namespace

void encode_any(const JsonValue& value, StringPool& pool, BitWriter& writer) {
    std::visit(AnyEncoder{pool, writer}, value.storage());
}

JsonValue decode_any(BitReader& r, StringPool& pool, unsigned depth) {
    if (depth >= max_decode_depth) throw DecodeError(DecodeFault::invalid_value, "nesting too deep");
    const auto tag = static_cast<std::uint8_t>(r.read_bits(8));
    const auto major = static_cast<Major>(tag >> 5);
    const std::uint8_t small = tag & 0x1F;
    switch (major) {
    case major_uint: {
        const std::uint64_t n = read_count(r, small);
        if (n > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
            throw DecodeError(DecodeFault::overflow, "integer past 64 bits");
        }
        return static_cast<std::int64_t>(n);
    }
    case major_negative: {
        const std::uint64_t n = read_count(r, small);
        if (n > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
            throw DecodeError(DecodeFault::overflow, "integer past 64 bits");
        }
        return -1 - static_cast<std::int64_t>(n);
    }
    case major_string: return read_any_string(r, pool, small);
    case major_array: {
        const std::uint64_t count = read_count(r, small);
        if (count > r.remaining() / 8) throw DecodeError(DecodeFault::truncated, "array count exceeds stream");
        Array items;
        items.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) items.push_back(decode_any(r, pool, depth + 1));
        return items;
    }
    case major_object: {
        const std::uint64_t count = read_count(r, small);
        if (count > r.remaining() / 16) throw DecodeError(DecodeFault::truncated, "object size exceeds stream");
        Object members;
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto key_tag = static_cast<std::uint8_t>(r.read_bits(8));
            if ((key_tag >> 5) != major_string) throw DecodeError(DecodeFault::invalid_tag, "object key is not a string");
            std::string key = read_any_string(r, pool, key_tag & 0x1F);
            JsonValue value = decode_any(r, pool, depth + 1);
            if (!members.insert(std::move(key), std::move(value))) {
                throw DecodeError(DecodeFault::invalid_value, "duplicate object key");
            }
        }
        return members;
    }
    case major_simple:
        switch (small) {
        case simple_false: return false;
        case simple_true: return true;
        case simple_null: return nullptr;
        default: throw DecodeError(DecodeFault::invalid_tag, "simple value " + std::to_string(small));
        }
    case major_real: return read_real(r, small);
    case major_reserved: break;
    }
    throw DecodeError(DecodeFault::reserved_tag, "major type 7");
}

std::vector<std::uint8_t> frame(Mode mode, std::span<const std::uint8_t> payload) {
    std::vector<std::uint8_t> out(payload.size() + 4);
    std::memcpy(out.data(), "BJ1", 3);
    out[3] = static_cast<std::uint8_t>(mode);
    if (!payload.empty()) std::memcpy(out.data() + 4, payload.data(), payload.size());
    return out;
}

Framed unframe(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), "BJ1", 3) != 0) {
        throw DecodeError(DecodeFault::bad_frame, "missing BJ1 header");
    }
    if (bytes[3] > static_cast<std::uint8_t>(Mode::schema_driven)) {
        throw DecodeError(DecodeFault::bad_frame, "unknown mode byte " + std::to_string(bytes[3]));
    }
    return {static_cast<Mode>(bytes[3]), {bytes.begin() + 4, bytes.end()}};
}

}  // namespace bitjson
