#include <algorithm>
#include <cctype>

#include "bitjson/schema.hpp"

namespace bitjson {
namespace {

bool is_identifier(std::string_view key) {
    if (key.empty() || std::isdigit(static_cast<unsigned char>(key.front()))) return false;
    return std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
    });
}

class Validator {
public:
    explicit Validator(const CanonicalSchema& schema) : schema_(schema) {}

    std::optional<Violation> check(const SchemaNode& node, const JsonValue& value) {
        path_ = "$";
        if (visit(node, value)) return std::nullopt;
        return Violation{failed_path_, reason_};
    }

private:
    bool fail(std::string reason) {
        failed_path_ = path_;
        reason_ = std::move(reason);
        return false;
    }

    bool visit(const SchemaNode& node, const JsonValue& v) {
        return std::visit([&](const auto& s) { return check_node(s, v); }, node.node);
    }

    bool check_node(const AnySchema&, const JsonValue&) { return true; }

    bool check_node(const EnumSchema& s, const JsonValue& v) {
        for (const auto& candidate : s.values) {
            if (json_equal(candidate, v)) return true;
        }
        return fail("value not in enumeration");
    }

    bool check_node(const IntegerSchema& s, const JsonValue& v) {
        const auto n = integral_value(v);
        if (!n) return fail("expected integer");
        if (s.minimum && *n < *s.minimum) return fail("below minimum " + std::to_string(*s.minimum));
        if (s.maximum && *n > *s.maximum) return fail("above maximum " + std::to_string(*s.maximum));
        if (s.multiple_of && *n % *s.multiple_of != 0) {
            return fail("not a multiple of " + std::to_string(*s.multiple_of));
        }
        return true;
    }

    bool check_node(const NumberSchema&, const JsonValue& v) {
        return v.is_number() || fail("expected number");
    }

    bool check_node(const StringSchema& s, const JsonValue& v) {
        if (!v.is_string()) return fail("expected string");
        if (s.max_length && utf8_length(v.as_string()) > *s.max_length) {
            return fail("longer than maxLength " + std::to_string(*s.max_length));
        }
        return true;
    }

    bool check_node(const BooleanSchema&, const JsonValue& v) {
        return v.is_bool() || fail("expected boolean");
    }

    bool check_node(const NullSchema&, const JsonValue& v) {
        return v.is_null() || fail("expected null");
    }

    bool check_node(const ArraySchema& s, const JsonValue& v) {
        if (!v.is_array()) return fail("expected array");
        const Array& items = v.as_array();
        if (items.size() < s.min_items) return fail("fewer than minItems " + std::to_string(s.min_items));
        if (s.max_items && items.size() > *s.max_items) {
            return fail("more than maxItems " + std::to_string(*s.max_items));
        }
        const std::size_t saved = path_.size();
        for (std::size_t i = 0; i < items.size(); ++i) {
            path_ += "[" + std::to_string(i) + "]";
            const SchemaNode& sub = i < s.prefix.size() ? *s.prefix[i] : *s.items;
            if (!visit(sub, items[i])) return false;
            path_.resize(saved);
        }
        return true;
    }

    bool check_node(const ObjectSchema& s, const JsonValue& v) {
        if (!v.is_object()) return fail("expected object");
        const Object& o = v.as_object();
        const std::size_t saved = path_.size();
        for (const auto& [key, sub] : s.required) {
            const JsonValue* member = o.find(key);
            if (member == nullptr) return fail("missing required property \"" + key + "\"");
            append_path_key(path_, key);
            if (!visit(*sub, *member)) return false;
            path_.resize(saved);
        }
        for (const auto& [key, member] : o) {
            if (s.required.contains(key)) continue;
            append_path_key(path_, key);
            if (auto it = s.optional.find(key); it != s.optional.end()) {
                if (!visit(*it->second, member)) return false;
            } else if (s.closed()) {
                return fail("property not allowed");
            } else if (!visit(*s.additional, member)) {
                return false;
            }
            path_.resize(saved);
        }
        return true;
    }

    bool check_node(const UnionSchema& s, const JsonValue& v) {
        for (const auto& branch : s.branches) {
            Validator probe(schema_);
            probe.path_ = path_;
            if (probe.visit(*branch, v)) return true;
        }
        return fail("no union branch accepts the value");
    }

    bool check_node(const RefSchema& s, const JsonValue& v) {
        return visit(schema_.resolve(s.name), v);
    }

    const CanonicalSchema& schema_;
    std::string path_;
    std::string failed_path_;
    std::string reason_;
};

}  // namespace

void append_path_key(std::string& path, std::string_view key) {
    if (is_identifier(key)) {
        path += '.';
        path.append(key);
    } else {
        path += '[';
        append_json_string(path, key);
        path += ']';
    }
}

std::optional<Violation> find_violation(const CanonicalSchema& schema, const JsonValue& value) {
    return find_violation(schema, *schema.root, value);
}

std::optional<Violation> find_violation(const CanonicalSchema& schema, const SchemaNode& node,
                                        const JsonValue& value) {
    return Validator(schema).check(node, value);
}

}  // namespace bitjson
