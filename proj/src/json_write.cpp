#include <string>

#include "bitjson/json_value.hpp"
#include "bitjson/kernels.hpp"

namespace bitjson {

void append_json_string(std::string& out, std::string_view s) {
    static constexpr char kHex[] = "0123456789abcdef";
    const auto& k = kernels::active();
    const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
    out.push_back('"');
    std::size_t i = 0;
    while (i < s.size()) {
        const std::size_t run = k.find_escape(p + i, s.size() - i);
        out.append(s.substr(i, run));
        i += run;
        if (i >= s.size()) break;
        const char c = s[i++];
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            out += "\\u00";
            out.push_back(kHex[(c >> 4) & 0xF]);
            out.push_back(kHex[c & 0xF]);
        }
    }
    out.push_back('"');
}

std::string format_real(const Real& real) {
    if (real.is_zero()) return "0";
    const std::string& d = real.digits;
    const std::int64_t len = static_cast<std::int64_t>(d.size());
    const std::int64_t e = real.exponent;
    std::string best;
    auto consider = [&best](std::string candidate) {
        if (best.empty() || candidate.size() < best.size()) best = std::move(candidate);
    };

    if (e >= 0) {
        if (real.to_integer()) consider(d + std::string(static_cast<std::size_t>(e), '0'));
    } else if (len + e > 0) {
        const auto point = static_cast<std::size_t>(len + e);
        consider(d.substr(0, point) + "." + d.substr(point));
    } else {
        consider("0." + std::string(static_cast<std::size_t>(-e - len), '0') + d);
    }
    std::string scientific(1, d[0]);
    if (len > 1) scientific += "." + d.substr(1);
    consider(scientific + "e" + std::to_string(e + len - 1));
    if (e != 0) consider(d + "e" + std::to_string(e));

    return real.sign < 0 ? "-" + best : best;
}

namespace {

void write_compact(std::string& out, const JsonValue& v) {
    switch (v.kind()) {
    case JsonKind::null:
        out += "null";
        break;
    case JsonKind::boolean:
        out += v.as_bool() ? "true" : "false";
        break;
    case JsonKind::integer:
        out += std::to_string(v.as_integer());
        break;
    case JsonKind::real:
        out += format_real(v.as_real());
        break;
    case JsonKind::string:
        append_json_string(out, v.as_string());
        break;
    case JsonKind::array: {
        out.push_back('[');
        bool first = true;
        for (const auto& item : v.as_array()) {
            if (!first) out.push_back(',');
            first = false;
            write_compact(out, item);
        }
        out.push_back(']');
        break;
    }
    case JsonKind::object: {
        out.push_back('{');
        bool first = true;
        for (const auto& [key, item] : v.as_object()) {
            if (!first) out.push_back(',');
            first = false;
            append_json_string(out, key);
            out.push_back(':');
            write_compact(out, item);
        }
        out.push_back('}');
        break;
    }
    }
}

void write_pretty(std::string& out, const JsonValue& v, int indent, int level) {
    auto newline = [&](int depth) {
        out.push_back('\n');
        out.append(static_cast<std::size_t>(indent * depth), ' ');
    };
    if (v.is_array() && !v.as_array().empty()) {
        out.push_back('[');
        bool first = true;
        for (const auto& item : v.as_array()) {
            if (!first) out.push_back(',');
            first = false;
            newline(level + 1);
            write_pretty(out, item, indent, level + 1);
        }
        newline(level);
        out.push_back(']');
    } else if (v.is_object() && !v.as_object().empty()) {
        out.push_back('{');
        bool first = true;
        for (const auto& [key, item] : v.as_object()) {
            if (!first) out.push_back(',');
            first = false;
            newline(level + 1);
            append_json_string(out, key);
            out += ": ";
            write_pretty(out, item, indent, level + 1);
        }
        newline(level);
        out.push_back('}');
    } else {
        write_compact(out, v);
    }
}

}  // namespace

std::string minify(const JsonValue& value) {
    std::string out;
    write_compact(out, value);
    return out;
}

std::string pretty(const JsonValue& value, int indent) {
    std::string out;
    write_pretty(out, value, indent, 0);
    out.push_back('\n');
    return out;
}

}  // namespace bitjson
