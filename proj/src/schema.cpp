#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

#include "bitjson/error.hpp"
#include "bitjson/schema.hpp"

namespace bitjson {

__extension__ typedef __int128 i128;
namespace {

// Keywords that carry no constraint on instances.
const std::set<std::string_view> kAnnotations = {
    "title",   "description", "$comment",   "$schema",  "$id",       "default",
    "examples", "deprecated", "readOnly",   "writeOnly", "$defs",    "definitions",
};

const std::set<std::string_view> kConstraints = {
    "type",     "enum",        "const",    "minimum",    "maximum",    "multipleOf",
    "maxLength", "items",      "prefixItems", "minItems", "maxItems", "properties",
    "required", "additionalProperties", "oneOf", "anyOf", "$ref",
};

std::string_view keyword_family(std::string_view keyword) {
    if (keyword == "minimum" || keyword == "maximum" || keyword == "multipleOf") return "number";
    if (keyword == "maxLength") return "string";
    if (keyword == "items" || keyword == "prefixItems" || keyword == "minItems" || keyword == "maxItems") {
        return "array";
    }
    if (keyword == "properties" || keyword == "required" || keyword == "additionalProperties") return "object";
    return {};
}

// floor() of a JSON number, saturated: `overflow` is -1 / +1 when the result
// is below / above the 64-bit range.
struct Saturated {
    std::int64_t value = 0;
    int overflow = 0;
};

Saturated floor_of(const JsonValue& number, bool ceiling) {
    if (number.is_integer()) return {number.as_integer(), 0};
    const Real& r = number.as_real();
    if (auto exact = r.to_integer()) return {*exact, 0};
    // Integral but out of range, or fractional.
    const std::int64_t len = static_cast<std::int64_t>(r.digits.size());
    const std::int64_t int_len = len + r.exponent;
    if (r.exponent >= 0 || int_len > 19) return {0, r.sign};
    std::string int_digits = int_len > 0 ? r.digits.substr(0, static_cast<std::size_t>(int_len)) : "0";
    const auto truncated = Real::normalized(r.sign, int_digits, 0);
    auto value = truncated ? truncated->to_integer() : std::nullopt;
    if (!value) return {0, r.sign};
    // fractional part is nonzero in normal form
    const bool round_away = (r.sign < 0) != ceiling;
    if (round_away) {
        if (r.sign < 0) {
            if (*value == std::numeric_limits<std::int64_t>::min()) return {0, -1};
            return {*value - 1, 0};
        }
        if (*value == std::numeric_limits<std::int64_t>::max()) return {0, 1};
        return {*value + 1, 0};
    }
    return {*value, 0};
}

std::string unescape_token(std::string_view token) {
    std::string out;
    for (std::size_t i = 0; i < token.size(); ++i) {
        if (token[i] == '~' && i + 1 < token.size() && (token[i + 1] == '0' || token[i + 1] == '1')) {
            out.push_back(token[i + 1] == '0' ? '~' : '/');
            ++i;
        } else {
            out.push_back(token[i]);
        }
    }
    return out;
}

std::string escape_token(std::string_view name) {
    std::string out;
    for (char c : name) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out.push_back(c);
    }
    return out;
}

constexpr std::string_view kDefsPrefix = "#/$defs/";

std::string definition_name(std::string_view pointer) {
    if (pointer.starts_with(kDefsPrefix)) {
        const std::string_view token = pointer.substr(kDefsPrefix.size());
        if (token.find('/') == std::string_view::npos) return unescape_token(token);
    }
    return std::string(pointer);
}

std::optional<std::uint32_t> count_keyword(const Object& o, std::string_view key) {
    const JsonValue* v = o.find(key);
    if (v == nullptr) return std::nullopt;
    const auto n = integral_value(*v);
    if (!n || *n < 0) throw SchemaError(std::string(key) + " must be a non-negative integer");
    if (*n > std::numeric_limits<std::uint32_t>::max()) return std::numeric_limits<std::uint32_t>::max();
    return static_cast<std::uint32_t>(*n);
}

class Canonicalizer {
public:
    explicit Canonicalizer(const JsonValue& document) : document_(document) {}

    CanonicalSchema run() {
        CanonicalSchema out;
        out.root = node(document_);
        out.definitions = std::move(definitions_);
        check_cycles(out);
        return out;
    }

private:
    SchemaPtr node(const JsonValue& schema) {
        if (schema.is_bool()) {
            if (schema.as_bool()) return make_schema(AnySchema{});
            throw SchemaError("schema `false` admits no instance");
        }
        if (!schema.is_object()) throw SchemaError("schema must be an object or a boolean");
        const Object& o = schema.as_object();

        std::vector<std::string_view> constraints;
        for (const auto& [key, value] : o) {
            if (kAnnotations.contains(key)) continue;
            // unsupported keyword: this node degrades to the wildcard
            if (!kConstraints.contains(key)) return make_schema(AnySchema{});
            constraints.push_back(key);
        }
        if (constraints.empty()) return make_schema(AnySchema{});
        auto has = [&](std::string_view k) {
            return std::find(constraints.begin(), constraints.end(), k) != constraints.end();
        };

        if (has("$ref")) {
            if (constraints.size() > 1) return make_schema(AnySchema{});
            const JsonValue* ref = o.find("$ref");
            if (!ref->is_string()) throw SchemaError("$ref must be a string");
            return reference(ref->as_string());
        }
        if (has("oneOf") || has("anyOf")) {
            if (constraints.size() > 1) return make_schema(AnySchema{});
            return combinator(*o.find(has("oneOf") ? "oneOf" : "anyOf"));
        }
        if (has("enum") || has("const")) return enumeration(o, constraints);
        return typed_dispatch(o, constraints);
    }

    SchemaPtr combinator(const JsonValue& list) {
        if (!list.is_array() || list.as_array().empty()) {
            throw SchemaError("oneOf/anyOf must be a non-empty array");
        }
        UnionSchema u;
        for (const auto& branch : list.as_array()) u.branches.push_back(node(branch));
        if (u.branches.size() == 1) return u.branches.front();
        return make_schema(std::move(u));
    }

    SchemaPtr enumeration(const Object& o, const std::vector<std::string_view>& constraints) {
        std::vector<JsonValue> values;
        auto add_unique = [&values](const JsonValue& v) {
            for (const auto& existing : values) {
                if (json_equal(existing, v)) return;
            }
            values.push_back(v);
        };
        if (const JsonValue* list = o.find("enum")) {
            if (!list->is_array()) throw SchemaError("enum must be an array");
            for (const auto& v : list->as_array()) add_unique(v);
            if (const JsonValue* c = o.find("const")) {
                std::erase_if(values, [c](const JsonValue& v) { return !json_equal(v, *c); });
            }
        } else {
            values.push_back(*o.find("const"));
        }

        std::vector<std::string_view> rest;
        for (auto k : constraints) {
            if (k != "enum" && k != "const") rest.push_back(k);
        }
        if (!rest.empty()) {
            const SchemaPtr other = typed_dispatch(o, rest);
            CanonicalSchema scope{other, definitions_};
            std::erase_if(values, [&](const JsonValue& v) { return !validate(scope, *other, v); });
        }
        if (values.empty()) throw SchemaError("enum/const admits no value");
        return make_schema(EnumSchema{std::move(values)});
    }

    SchemaPtr typed_dispatch(const Object& o, const std::vector<std::string_view>& constraints) {
        if (const JsonValue* type = o.find("type")) {
            std::vector<std::string> names;
            if (type->is_string()) {
                names.push_back(type->as_string());
            } else if (type->is_array() && !type->as_array().empty()) {
                for (const auto& t : type->as_array()) {
                    if (!t.is_string()) throw SchemaError("type entries must be strings");
                    if (std::find(names.begin(), names.end(), t.as_string()) == names.end()) {
                        names.push_back(t.as_string());
                    }
                }
            } else {
                throw SchemaError("type must be a string or a non-empty array");
            }
            if (names.size() == 1) return typed(o, names.front());
            UnionSchema u;
            for (const auto& name : names) u.branches.push_back(typed(o, name));
            return make_schema(std::move(u));
        }

        std::string_view family;
        for (auto k : constraints) {
            const auto f = keyword_family(k);
            if (f.empty()) continue;
            if (!family.empty() && family != f) return make_schema(AnySchema{});
            family = f;
        }
        if (family.empty()) return make_schema(AnySchema{});
        return typed(o, family);
    }

    SchemaPtr typed(const Object& o, std::string_view type) {
        if (type == "integer") return integer(o);
        if (type == "number") {
            for (auto k : {"minimum", "maximum", "multipleOf"}) {
                const JsonValue* v = o.find(k);
                if (v != nullptr && !v->is_number()) throw SchemaError(std::string(k) + " must be a number");
            }
            return make_schema(NumberSchema{});
        }
        if (type == "string") return make_schema(StringSchema{count_keyword(o, "maxLength")});
        if (type == "boolean") return make_schema(BooleanSchema{});
        if (type == "null") return make_schema(NullSchema{});
        if (type == "array") return array(o);
        if (type == "object") return object(o);
        throw SchemaError("unknown type: " + std::string(type));
    }

    SchemaPtr integer(const Object& o) {
        IntegerSchema s;
        if (const JsonValue* m = o.find("multipleOf")) {
            if (!m->is_number()) throw SchemaError("multipleOf must be a number");
            const auto step = integral_value(*m);
            if (!step) {
                if (m->as_decimal().sign < 0 || m->as_decimal().is_zero()) {
                    throw SchemaError("multipleOf must be positive");
                }
                return make_schema(AnySchema{});
            }
            if (*step <= 0) throw SchemaError("multipleOf must be positive");
            if (*step > 1) s.multiple_of = *step;
        }
        if (const JsonValue* v = o.find("minimum")) {
            if (!v->is_number()) throw SchemaError("minimum must be a number");
            const auto b = floor_of(*v, true);
            if (b.overflow > 0) throw SchemaError("minimum admits no 64-bit integer");
            if (b.overflow == 0) s.minimum = b.value;
        }
        if (const JsonValue* v = o.find("maximum")) {
            if (!v->is_number()) throw SchemaError("maximum must be a number");
            const auto b = floor_of(*v, false);
            if (b.overflow < 0) throw SchemaError("maximum admits no 64-bit integer");
            if (b.overflow == 0) s.maximum = b.value;
        }
        if (s.multiple_of) {
            const i128 step = *s.multiple_of;
            if (s.minimum) {
                i128 lo = *s.minimum;
                const i128 r = ((lo % step) + step) % step;
                if (r != 0) lo += step - r;
                if (lo > std::numeric_limits<std::int64_t>::max()) throw SchemaError("integer range is empty");
                s.minimum = static_cast<std::int64_t>(lo);
            }
            if (s.maximum) {
                i128 hi = *s.maximum;
                hi -= ((hi % step) + step) % step;
                if (hi < std::numeric_limits<std::int64_t>::min()) throw SchemaError("integer range is empty");
                s.maximum = static_cast<std::int64_t>(hi);
            }
        }
        if (s.minimum && s.maximum && *s.minimum > *s.maximum) throw SchemaError("integer range is empty");
        return make_schema(s);
    }

    SchemaPtr array(const Object& o) {
        ArraySchema s;
        bool closed = false;
        if (const JsonValue* prefix = o.find("prefixItems")) {
            if (!prefix->is_array()) throw SchemaError("prefixItems must be an array");
            for (const auto& item : prefix->as_array()) s.prefix.push_back(node(item));
        }
        const JsonValue* items = o.find("items");
        if (items == nullptr || (items->is_bool() && items->as_bool())) {
            s.items = make_schema(AnySchema{});
        } else if (items->is_bool()) {
            s.items = make_schema(AnySchema{});
            closed = true;
        } else if (items->is_array()) {
            // tuple form from older drafts
            if (o.contains("prefixItems")) throw SchemaError("items array together with prefixItems");
            for (const auto& item : items->as_array()) s.prefix.push_back(node(item));
            s.items = make_schema(AnySchema{});
        } else {
            s.items = node(*items);
        }
        s.min_items = count_keyword(o, "minItems").value_or(0);
        s.max_items = count_keyword(o, "maxItems");
        if (closed) {
            const auto limit = static_cast<std::uint32_t>(s.prefix.size());
            s.max_items = s.max_items ? std::min(*s.max_items, limit) : limit;
        }
        if (s.max_items && *s.max_items < s.min_items) throw SchemaError("maxItems is below minItems");
        return make_schema(std::move(s));
    }

    SchemaPtr object(const Object& o) {
        ObjectSchema s;
        std::map<std::string, SchemaPtr> properties;
        if (const JsonValue* props = o.find("properties")) {
            if (!props->is_object()) throw SchemaError("properties must be an object");
            for (const auto& [key, sub] : props->as_object()) properties.emplace(key, node(sub));
        }
        if (const JsonValue* required = o.find("required")) {
            if (!required->is_array()) throw SchemaError("required must be an array");
            for (const auto& key : required->as_array()) {
                if (!key.is_string()) throw SchemaError("required entries must be strings");
                auto it = properties.find(key.as_string());
                s.required.emplace(key.as_string(), it != properties.end() ? it->second : make_schema(AnySchema{}));
            }
        }
        for (auto& [key, sub] : properties) {
            if (!s.required.contains(key)) s.optional.emplace(key, sub);
        }
        const JsonValue* additional = o.find("additionalProperties");
        if (additional == nullptr || (additional->is_bool() && additional->as_bool())) {
            s.additional = make_schema(AnySchema{});
        } else if (additional->is_bool()) {
            s.additional = nullptr;
        } else {
            s.additional = node(*additional);
        }
        return make_schema(std::move(s));
    }

    SchemaPtr reference(const std::string& pointer) {
        if (pointer.empty() || pointer.front() != '#') {
            throw ReferenceError("remote references are not supported: " + pointer);
        }
        std::string name = definition_name(pointer);
        if (!definitions_.contains(name) && !pending_.contains(name)) {
            pending_.insert(name);
            const JsonValue& target = resolve_pointer(pointer);
            SchemaPtr resolved = node(target);
            pending_.erase(name);
            definitions_.emplace(name, std::move(resolved));
        }
        return make_schema(RefSchema{std::move(name)});
    }

    const JsonValue& resolve_pointer(std::string_view pointer) const {
        std::string_view rest = pointer.substr(1);
        const JsonValue* current = &document_;
        if (!rest.empty() && rest.front() != '/') throw ReferenceError("unsupported reference: " + std::string(pointer));
        while (!rest.empty()) {
            rest.remove_prefix(1);
            const auto slash = rest.find('/');
            const std::string token = unescape_token(rest.substr(0, slash));
            rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash);
            if (current->is_object()) {
                current = current->as_object().find(token);
            } else if (current->is_array()) {
                std::size_t index = 0;
                const bool numeric = !token.empty() && std::all_of(token.begin(), token.end(), ::isdigit);
                if (numeric) index = std::stoul(token);
                current = numeric && index < current->as_array().size() ? &current->as_array()[index] : nullptr;
            } else {
                current = nullptr;
            }
            if (current == nullptr) throw ReferenceError("unresolvable reference: " + std::string(pointer));
        }
        return *current;
    }

    // References reachable without passing through an array or object node.
    static void unguarded_refs(const SchemaNode& n, std::vector<std::string>& out) {
        if (const auto* r = std::get_if<RefSchema>(&n.node)) {
            out.push_back(r->name);
        } else if (const auto* u = std::get_if<UnionSchema>(&n.node)) {
            for (const auto& b : u->branches) unguarded_refs(*b, out);
        }
    }

    static void check_cycles(const CanonicalSchema& schema) {
        std::map<std::string, int> state;  // 1 = on stack, 2 = done
        auto visit = [&](auto&& self, const std::string& name) -> void {
            auto& s = state[name];
            if (s == 2) return;
            if (s == 1) throw SchemaError("reference cycle without an array or object: " + name);
            s = 1;
            std::vector<std::string> next;
            unguarded_refs(schema.resolve(name), next);
            for (const auto& n : next) self(self, n);
            state[name] = 2;
        };
        for (const auto& [name, def] : schema.definitions) visit(visit, name);
    }

    const JsonValue& document_;
    std::map<std::string, SchemaPtr> definitions_;
    std::set<std::string> pending_;
};

bool ptr_equal(const SchemaPtr& a, const SchemaPtr& b) {
    if (a == nullptr || b == nullptr) return a == b;
    return *a == *b;
}

bool maps_equal(const std::map<std::string, SchemaPtr>& a, const std::map<std::string, SchemaPtr>& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const auto& x, const auto& y) { return x.first == y.first && ptr_equal(x.second, y.second); });
}

bool lists_equal(const std::vector<SchemaPtr>& a, const std::vector<SchemaPtr>& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), ptr_equal);
}

struct NodeEqual {
    bool operator()(const AnySchema&, const AnySchema&) const { return true; }
    bool operator()(const EnumSchema& a, const EnumSchema& b) const {
        return std::equal(a.values.begin(), a.values.end(), b.values.begin(), b.values.end(), json_equal);
    }
    bool operator()(const IntegerSchema& a, const IntegerSchema& b) const {
        return a.minimum == b.minimum && a.maximum == b.maximum && a.multiple_of == b.multiple_of;
    }
    bool operator()(const NumberSchema&, const NumberSchema&) const { return true; }
    bool operator()(const StringSchema& a, const StringSchema& b) const { return a.max_length == b.max_length; }
    bool operator()(const BooleanSchema&, const BooleanSchema&) const { return true; }
    bool operator()(const NullSchema&, const NullSchema&) const { return true; }
    bool operator()(const ArraySchema& a, const ArraySchema& b) const {
        return ptr_equal(a.items, b.items) && lists_equal(a.prefix, b.prefix) && a.min_items == b.min_items &&
               a.max_items == b.max_items;
    }
    bool operator()(const ObjectSchema& a, const ObjectSchema& b) const {
        return maps_equal(a.required, b.required) && maps_equal(a.optional, b.optional) &&
               ptr_equal(a.additional, b.additional);
    }
    bool operator()(const UnionSchema& a, const UnionSchema& b) const { return lists_equal(a.branches, b.branches); }
    bool operator()(const RefSchema& a, const RefSchema& b) const { return a.name == b.name; }
    template <typename A, typename B>
    bool operator()(const A&, const B&) const {
        return false;
    }
};

JsonValue emit(const SchemaNode& n);

JsonValue emit_ptr(const SchemaPtr& p) {
    return emit(*p);
}

struct Emitter {
    JsonValue operator()(const AnySchema&) const { return Object{}; }
    JsonValue operator()(const EnumSchema& e) const {
        if (e.values.size() == 1) return Object{{"const", e.values.front()}};
        return Object{{"enum", Array(e.values.begin(), e.values.end())}};
    }
    JsonValue operator()(const IntegerSchema& s) const {
        Object o{{"type", "integer"}};
        if (s.minimum) o.insert("minimum", *s.minimum);
        if (s.maximum) o.insert("maximum", *s.maximum);
        if (s.multiple_of) o.insert("multipleOf", *s.multiple_of);
        return o;
    }
    JsonValue operator()(const NumberSchema&) const { return Object{{"type", "number"}}; }
    JsonValue operator()(const StringSchema& s) const {
        Object o{{"type", "string"}};
        if (s.max_length) o.insert("maxLength", *s.max_length);
        return o;
    }
    JsonValue operator()(const BooleanSchema&) const { return Object{{"type", "boolean"}}; }
    JsonValue operator()(const NullSchema&) const { return Object{{"type", "null"}}; }
    JsonValue operator()(const ArraySchema& s) const {
        Object o{{"type", "array"}};
        if (!s.prefix.empty()) {
            Array prefix;
            for (const auto& p : s.prefix) prefix.push_back(emit_ptr(p));
            o.insert("prefixItems", std::move(prefix));
        }
        o.insert("items", emit_ptr(s.items));
        if (s.min_items > 0) o.insert("minItems", s.min_items);
        if (s.max_items) o.insert("maxItems", *s.max_items);
        return o;
    }
    JsonValue operator()(const ObjectSchema& s) const {
        Object o{{"type", "object"}};
        Object properties;
        Array required;
        for (const auto& [key, sub] : s.required) {
            properties.insert(key, emit_ptr(sub));
            required.emplace_back(key);
        }
        for (const auto& [key, sub] : s.optional) properties.insert(key, emit_ptr(sub));
        if (!properties.empty()) o.insert("properties", std::move(properties));
        if (!required.empty()) o.insert("required", std::move(required));
        if (s.closed()) o.insert("additionalProperties", false);
        else if (!std::holds_alternative<AnySchema>(s.additional->node)) o.insert("additionalProperties", emit_ptr(s.additional));
        return o;
    }
    JsonValue operator()(const UnionSchema& s) const {
        Array branches;
        for (const auto& b : s.branches) branches.push_back(emit_ptr(b));
        return Object{{"anyOf", std::move(branches)}};
    }
    JsonValue operator()(const RefSchema& s) const {
        return Object{{"$ref", std::string(kDefsPrefix) + escape_token(s.name)}};
    }
};

JsonValue emit(const SchemaNode& n) {
    return std::visit(Emitter{}, n.node);
}

}  // namespace

const SchemaNode& CanonicalSchema::resolve(const std::string& name) const {
    auto it = definitions.find(name);
    if (it == definitions.end()) throw ReferenceError("undefined reference: " + name);
    return *it->second;
}

bool operator==(const SchemaNode& a, const SchemaNode& b) {
    return std::visit(NodeEqual{}, a.node, b.node);
}

bool operator==(const CanonicalSchema& a, const CanonicalSchema& b) {
    return ptr_equal(a.root, b.root) && maps_equal(a.definitions, b.definitions);
}

CanonicalSchema canonicalize(const JsonValue& schema) {
    return Canonicalizer(schema).run();
}

CanonicalSchema any_schema() {
    return CanonicalSchema{make_schema(AnySchema{}), {}};
}

bool is_any(const CanonicalSchema& schema) noexcept {
    return schema.root && std::holds_alternative<AnySchema>(schema.root->node);
}

JsonValue to_json(const CanonicalSchema& schema) {
    JsonValue root = emit(*schema.root);
    if (schema.definitions.empty()) return root;
    Object defs;
    for (const auto& [name, def] : schema.definitions) defs.insert(name, emit(*def));
    Object out;
    for (const auto& [key, value] : root.as_object()) out.insert(key, value);
    out.insert("$defs", std::move(defs));
    return out;
}

std::optional<std::int64_t> integral_value(const JsonValue& value) {
    if (value.is_integer()) return value.as_integer();
    if (value.is_real()) return value.as_real().to_integer();
    return std::nullopt;
}

}  // namespace bitjson
