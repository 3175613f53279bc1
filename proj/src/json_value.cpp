#include "bitjson/json_value.hpp"

#include <algorithm>
#include <limits>

#include "bitjson/error.hpp"
#include "bitjson/kernels.hpp"

namespace bitjson {

const char* to_string(DecodeFault fault) noexcept {
    switch (fault) {
    case DecodeFault::truncated: return "truncated stream";
    case DecodeFault::overflow: return "varint overflow";
    case DecodeFault::invalid_choice: return "invalid choice index";
    case DecodeFault::invalid_value: return "value out of range";
    case DecodeFault::nonzero_padding: return "nonzero padding";
    case DecodeFault::trailing_data: return "trailing data";
    case DecodeFault::malformed_utf8: return "malformed UTF-8";
    case DecodeFault::pool_index: return "string pool index out of range";
    case DecodeFault::reserved_tag: return "reserved major type";
    case DecodeFault::invalid_tag: return "invalid tag";
    case DecodeFault::bad_frame: return "bad frame header";
    }
    return "decode error";
}

const char* to_string(JsonKind kind) noexcept {
    switch (kind) {
    case JsonKind::null: return "null";
    case JsonKind::boolean: return "boolean";
    case JsonKind::integer: return "integer";
    case JsonKind::real: return "real";
    case JsonKind::string: return "string";
    case JsonKind::array: return "array";
    case JsonKind::object: return "object";
    }
    return "unknown";
}

std::optional<Real> Real::normalized(int sign, std::string_view digits, std::int64_t exponent) {
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return Real{};
    const auto last = digits.find_last_not_of('0');
    exponent += static_cast<std::int64_t>(digits.size() - 1 - last);
    if (exponent < std::numeric_limits<std::int32_t>::min() || exponent > std::numeric_limits<std::int32_t>::max()) {
        return std::nullopt;
    }
    return Real{sign < 0 ? -1 : 1, std::string(digits.substr(first, last - first + 1)),
                static_cast<std::int32_t>(exponent)};
}

Real Real::from_integer(std::int64_t value) {
    if (value == 0) return Real{};
    const bool negative = value < 0;
    // magnitude via unsigned arithmetic so INT64_MIN is representable
    std::uint64_t magnitude = negative ? ~static_cast<std::uint64_t>(value) + 1 : static_cast<std::uint64_t>(value);
    std::int32_t exponent = 0;
    while (magnitude % 10 == 0) {
        magnitude /= 10;
        ++exponent;
    }
    return Real{negative ? -1 : 1, std::to_string(magnitude), exponent};
}

std::optional<std::int64_t> Real::to_integer() const {
    if (is_zero()) return 0;
    if (exponent < 0 || digits.size() + static_cast<std::size_t>(exponent) > 19) return std::nullopt;
    std::uint64_t magnitude = 0;
    constexpr std::uint64_t limit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) + 1;
    auto push = [&](unsigned d) -> bool {
        if (magnitude > (limit - d) / 10) return false;
        magnitude = magnitude * 10 + d;
        return true;
    };
    for (char c : digits) {
        if (!push(static_cast<unsigned>(c - '0'))) return std::nullopt;
    }
    for (std::int32_t i = 0; i < exponent; ++i) {
        if (!push(0)) return std::nullopt;
    }
    if (sign > 0) {
        if (magnitude == limit) return std::nullopt;
        return static_cast<std::int64_t>(magnitude);
    }
    return static_cast<std::int64_t>(~magnitude + 1);
}

Object::Object(std::initializer_list<Member> members) {
    for (const auto& m : members) insert(m.first, m.second);
}

bool Object::insert(std::string key, JsonValue value) {
    if (contains(key)) return false;
    members_.emplace_back(std::move(key), std::move(value));
    return true;
}

const JsonValue* Object::find(std::string_view key) const {
    for (const auto& m : members_) {
        if (m.first == key) return &m.second;
    }
    return nullptr;
}

Real JsonValue::as_decimal() const {
    if (is_integer()) return Real::from_integer(as_integer());
    return as_real();
}

namespace {

bool objects_equal(const Object& a, const Object& b) {
    if (a.size() != b.size()) return false;
    if (a.size() <= 8) {
        for (const auto& [key, value] : a) {
            const JsonValue* other = b.find(key);
            if (other == nullptr || !json_equal(value, *other)) return false;
        }
        return true;
    }
    auto sorted = [](const Object& o) {
        std::vector<const Object::Member*> out;
        out.reserve(o.size());
        for (const auto& m : o) out.push_back(&m);
        std::sort(out.begin(), out.end(), [](auto* l, auto* r) { return l->first < r->first; });
        return out;
    };
    const auto left = sorted(a);
    const auto right = sorted(b);
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (left[i]->first != right[i]->first || !json_equal(left[i]->second, right[i]->second)) return false;
    }
    return true;
}

}  // namespace

bool json_equal(const JsonValue& a, const JsonValue& b) {
    if (a.is_number() && b.is_number()) {
        if (a.is_integer() && b.is_integer()) return a.as_integer() == b.as_integer();
        return a.as_decimal() == b.as_decimal();
    }
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case JsonKind::null:
        return true;
    case JsonKind::boolean:
        return a.as_bool() == b.as_bool();
    case JsonKind::string:
        return a.as_string() == b.as_string();
    case JsonKind::array: {
        const Array& x = a.as_array();
        const Array& y = b.as_array();
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!json_equal(x[i], y[i])) return false;
        }
        return true;
    }
    case JsonKind::object:
        return objects_equal(a.as_object(), b.as_object());
    default:
        return false;
    }
}

bool is_valid_utf8(std::string_view s) noexcept {
    const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
    const std::size_t n = s.size();
    const auto& k = kernels::active();
    std::size_t i = 0;
    while (i < n) {
        i += k.ascii_prefix(p + i, n - i);
        if (i >= n) break;
        const std::uint8_t c = p[i];
        std::size_t len;
        std::uint32_t cp;
        if (c >= 0xC2 && c <= 0xDF) {
            len = 2;
            cp = c & 0x1F;
        } else if (c >= 0xE0 && c <= 0xEF) {
            len = 3;
            cp = c & 0x0F;
        } else if (c >= 0xF0 && c <= 0xF4) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (std::size_t j = 1; j < len; ++j) {
            if ((p[i + j] & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (p[i + j] & 0x3F);
        }
        if ((len == 3 && cp < 0x800) || (len == 4 && (cp < 0x10000 || cp > 0x10FFFF))) return false;
        if (cp >= 0xD800 && cp <= 0xDFFF) return false;
        i += len;
    }
    return true;
}

std::size_t utf8_length(std::string_view s) noexcept {
    return kernels::active().count_lead_bytes(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

}  // namespace bitjson
