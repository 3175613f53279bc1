#include <charconv>
#include <cstdint>
#include <string>

#include "bitjson/error.hpp"
#include "bitjson/json_value.hpp"
#include "bitjson/kernels.hpp"

namespace bitjson {
namespace {

constexpr int kMaxDepth = 512;

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    JsonValue parse_document() {
        if (text_.size() >= 3 && text_.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            fail("byte-order mark not allowed");
        }
        skip_ws();
        JsonValue value = parse_value(0);
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing content");
        return value;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
    [[noreturn]] void fail_at(const std::string& message, std::size_t at) const { throw ParseError(message, at); }

    bool at_end() const noexcept { return pos_ >= text_.size(); }
    char peek() const noexcept { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws() noexcept {
        while (!at_end()) {
            const char c = text_[pos_];
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r') break;
            ++pos_;
        }
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void expect_literal(std::string_view word) {
        if (text_.substr(pos_, word.size()) != word) fail("invalid literal");
        pos_ += word.size();
    }

    JsonValue parse_value(int depth) {
        if (depth > kMaxDepth) fail("nesting too deep");
        switch (peek()) {
        case '{':
            return parse_object(depth);
        case '[':
            return parse_array(depth);
        case '"':
            return JsonValue(parse_string());
        case 't':
            expect_literal("true");
            return JsonValue(true);
        case 'f':
            expect_literal("false");
            return JsonValue(false);
        case 'n':
            expect_literal("null");
            return JsonValue(nullptr);
        default:
            if (peek() == '-' || (peek() >= '0' && peek() <= '9')) return parse_number();
            if (at_end()) fail("unexpected end of input");
            fail("unexpected character");
        }
    }

    JsonValue parse_object(int depth) {
        ++pos_;
        Object object;
        skip_ws();
        if (peek() == '}') {
            ++pos_;
            return JsonValue(std::move(object));
        }
        while (true) {
            skip_ws();
            if (peek() != '"') fail("expected object key");
            const std::size_t key_at = pos_;
            std::string key = parse_string();
            skip_ws();
            expect(':');
            skip_ws();
            JsonValue value = parse_value(depth + 1);
            if (!object.insert(std::move(key), std::move(value))) fail_at("duplicate object key", key_at);
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect('}');
            return JsonValue(std::move(object));
        }
    }

    JsonValue parse_array(int depth) {
        ++pos_;
        Array array;
        skip_ws();
        if (peek() == ']') {
            ++pos_;
            return JsonValue(std::move(array));
        }
        while (true) {
            skip_ws();
            array.push_back(parse_value(depth + 1));
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect(']');
            return JsonValue(std::move(array));
        }
    }

    unsigned parse_hex4() {
        if (pos_ + 4 > text_.size()) fail("truncated unicode escape");
        unsigned value = 0;
        for (int i = 0; i < 4; ++i) {
            const char c = text_[pos_++];
            value <<= 4;
            if (c >= '0' && c <= '9') value |= static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f') value |= static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') value |= static_cast<unsigned>(c - 'A' + 10);
            else fail_at("invalid hex digit in unicode escape", pos_ - 1);
        }
        return value;
    }

    static void append_utf8(std::string& out, std::uint32_t cp) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }

    void parse_escape(std::string& out) {
        const std::size_t start = pos_ - 1;
        if (at_end()) fail("truncated escape");
        const char c = text_[pos_++];
        switch (c) {
        case '"': out.push_back('"'); return;
        case '\\': out.push_back('\\'); return;
        case '/': out.push_back('/'); return;
        case 'b': out.push_back('\b'); return;
        case 'f': out.push_back('\f'); return;
        case 'n': out.push_back('\n'); return;
        case 'r': out.push_back('\r'); return;
        case 't': out.push_back('\t'); return;
        case 'u': break;
        default: fail_at("invalid escape", start);
        }
        std::uint32_t cp = parse_hex4();
        if (cp >= 0xDC00 && cp <= 0xDFFF) fail_at("lone low surrogate", start);
        if (cp >= 0xD800 && cp <= 0xDBFF) {
            if (text_.substr(pos_, 2) != "\\u") fail_at("lone high surrogate", start);
            pos_ += 2;
            const std::uint32_t low = parse_hex4();
            if (low < 0xDC00 || low > 0xDFFF) fail_at("lone high surrogate", start);
            cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
        }
        append_utf8(out, cp);
    }

    std::string parse_string() {
        ++pos_;
        std::string out;
        const auto& k = kernels::active();
        const auto* base = reinterpret_cast<const std::uint8_t*>(text_.data());
        while (true) {
            const std::size_t run = k.find_escape(base + pos_, text_.size() - pos_);
            if (run > 0) {
                const std::string_view chunk = text_.substr(pos_, run);
                if (!is_valid_utf8(chunk)) fail("invalid UTF-8 in string");
                out.append(chunk);
                pos_ += run;
            }
            if (at_end()) fail("unterminated string");
            const char c = text_[pos_++];
            if (c == '"') return out;
            if (c == '\\') {
                parse_escape(out);
                continue;
            }
            fail_at("unescaped control character in string", pos_ - 1);
        }
    }

    JsonValue parse_number() {
        const std::size_t start = pos_;
        int sign = 1;
        if (peek() == '-') {
            sign = -1;
            ++pos_;
        }
        const std::size_t int_begin = pos_;
        if (peek() == '0') {
            ++pos_;
        } else if (peek() >= '1' && peek() <= '9') {
            while (peek() >= '0' && peek() <= '9') ++pos_;
        } else {
            fail("invalid number");
        }
        const std::string_view int_digits = text_.substr(int_begin, pos_ - int_begin);
        std::string_view frac_digits;
        if (peek() == '.') {
            ++pos_;
            const std::size_t frac_begin = pos_;
            while (peek() >= '0' && peek() <= '9') ++pos_;
            if (pos_ == frac_begin) fail("expected digits after decimal point");
            frac_digits = text_.substr(frac_begin, pos_ - frac_begin);
        }
        bool has_exponent = false;
        std::int64_t exponent = 0;
        if (peek() == 'e' || peek() == 'E') {
            has_exponent = true;
            ++pos_;
            int exp_sign = 1;
            if (peek() == '+' || peek() == '-') {
                exp_sign = peek() == '-' ? -1 : 1;
                ++pos_;
            }
            const std::size_t exp_begin = pos_;
            while (peek() >= '0' && peek() <= '9') {
                // saturate; anything this large is rejected by normalization
                if (exponent < 1'000'000'000'000) exponent = exponent * 10 + (text_[pos_] - '0');
                ++pos_;
            }
            if (pos_ == exp_begin) fail("expected exponent digits");
            exponent *= exp_sign;
        }

        if (frac_digits.empty() && !has_exponent) {
            std::int64_t value = 0;
            const char* first = text_.data() + start;
            const char* last = text_.data() + pos_;
            const auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last) {
                throw UnsupportedNumber("integer literal outside signed 64-bit range", start);
            }
            return JsonValue(value);
        }

        std::string digits;
        digits.reserve(int_digits.size() + frac_digits.size());
        digits.append(int_digits);
        digits.append(frac_digits);
        auto real = Real::normalized(sign, digits, exponent - static_cast<std::int64_t>(frac_digits.size()));
        if (!real) throw UnsupportedNumber("number exponent out of range", start);
        return JsonValue(std::move(*real));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

JsonValue parse_json(std::string_view text) {
    return Parser(text).parse_document();
}

}  // namespace bitjson
