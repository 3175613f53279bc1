#include "bitjson/plan.hpp"

#include <bit>
#include <set>

#include "bitjson/error.hpp"

namespace bitjson {
namespace {

template <typename T>
PlanPtr make_plan(T node) {
    return std::make_shared<const PlanNode>(PlanNode{std::move(node)});
}

PlanPtr map_node(const SchemaNode& schema);

struct Mapper {
    PlanPtr operator()(const AnySchema&) const { return make_plan(AnyPlan{}); }

    PlanPtr operator()(const EnumSchema& s) const {
        if (s.values.size() == 1) return make_plan(ConstPlan{s.values.front()});
        return make_plan(ChoicePlan{s.values, bits_for_count(s.values.size())});
    }

    PlanPtr operator()(const IntegerSchema& s) const {
        if (s.minimum && s.maximum) {
            const std::int64_t scale = s.multiple_of.value_or(1);
            // unsigned difference is exact for any min <= max
            const std::uint64_t span = static_cast<std::uint64_t>(*s.maximum) - static_cast<std::uint64_t>(*s.minimum);
            const std::uint64_t steps = span / static_cast<std::uint64_t>(scale);
            return make_plan(BoundedIntPlan{*s.minimum, *s.maximum, scale,
                                            static_cast<std::uint8_t>(std::bit_width(steps))});
        }
        if (s.minimum) return make_plan(VarIntPlan{VarIntBase::floor, *s.minimum});
        if (s.maximum) return make_plan(VarIntPlan{VarIntBase::ceil, *s.maximum});
        return make_plan(VarIntPlan{VarIntBase::none, 0});
    }

    PlanPtr operator()(const NumberSchema&) const { return make_plan(RealPlan{}); }
    PlanPtr operator()(const StringSchema& s) const { return make_plan(StringPlan{s.max_length}); }
    PlanPtr operator()(const BooleanSchema&) const { return make_plan(BoolPlan{}); }
    PlanPtr operator()(const NullSchema&) const { return make_plan(NullPlan{}); }

    PlanPtr operator()(const ArraySchema& s) const {
        ArrayPlan p;
        p.element = map_node(*s.items);
        for (const auto& item : s.prefix) p.prefix.push_back(map_node(*item));
        p.min_count = s.min_items;
        p.max_count = s.max_items;
        if (s.max_items && *s.max_items == s.min_items) p.fixed_count = s.min_items;
        return make_plan(std::move(p));
    }

    PlanPtr operator()(const ObjectSchema& s) const {
        ObjectPlan p;
        for (const auto& [key, sub] : s.required) p.required.push_back({key, map_node(*sub)});
        for (const auto& [key, sub] : s.optional) p.optional.push_back({key, map_node(*sub)});
        if (!s.closed()) p.additional = map_node(*s.additional);
        return make_plan(std::move(p));
    }

    PlanPtr operator()(const UnionSchema& s) const {
        UnionPlan p;
        for (const auto& branch : s.branches) p.branches.push_back({branch, map_node(*branch)});
        p.tag_bits = bits_for_count(s.branches.size());
        return make_plan(std::move(p));
    }

    PlanPtr operator()(const RefSchema& s) const { return make_plan(RefPlan{s.name}); }
};

PlanPtr map_node(const SchemaNode& schema) {
    return std::visit(Mapper{}, schema.node);
}

using Bound = std::optional<std::uint64_t>;

Bound add(Bound a, Bound b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

class BoundCalculator {
public:
    explicit BoundCalculator(const EncodingPlan& plan) : plan_(plan) {}

    Bound of(const PlanNode& node) {
        return std::visit([this](const auto& p) { return bound(p); }, node.node);
    }

private:
    Bound bound(const ConstPlan&) { return 0; }
    Bound bound(const ChoicePlan& p) { return p.index_bits; }
    Bound bound(const BoundedIntPlan& p) { return p.range_bits; }
    Bound bound(const VarIntPlan&) { return std::nullopt; }
    Bound bound(const RealPlan&) { return std::nullopt; }
    Bound bound(const StringPlan&) { return std::nullopt; }
    Bound bound(const BoolPlan&) { return 1; }
    Bound bound(const NullPlan&) { return 0; }
    Bound bound(const AnyPlan&) { return std::nullopt; }

    Bound bound(const ArrayPlan& p) {
        if (!p.fixed_count) return std::nullopt;
        const std::uint64_t count = *p.fixed_count;
        Bound total = 0;
        for (std::uint64_t i = 0; i < count && i < p.prefix.size(); ++i) total = add(total, of(*p.prefix[i]));
        if (count > p.prefix.size()) {
            const Bound each = of(*p.element);
            if (!each) return std::nullopt;
            total = add(total, *each * (count - p.prefix.size()));
        }
        return total;
    }

    Bound bound(const ObjectPlan& p) {
        if (p.additional) return std::nullopt;
        Bound total = p.optional.size();
        for (const auto& f : p.required) total = add(total, of(*f.plan));
        for (const auto& f : p.optional) total = add(total, of(*f.plan));
        return total;
    }

    Bound bound(const UnionPlan& p) {
        std::uint64_t widest = 0;
        for (const auto& b : p.branches) {
            const Bound each = of(*b.plan);
            if (!each) return std::nullopt;
            widest = std::max(widest, *each);
        }
        return widest + p.tag_bits;
    }

    Bound bound(const RefPlan& p) {
        if (!visiting_.insert(p.name).second) return std::nullopt;  // recursive
        const Bound result = of(plan_.resolve(p.name));
        visiting_.erase(p.name);
        return result;
    }

    const EncodingPlan& plan_;
    std::set<std::string> visiting_;
};

JsonValue dump(const PlanNode& node);

JsonValue dump_ptr(const PlanPtr& p) {
    return dump(*p);
}

Array dump_fields(const std::vector<FieldPlan>& fields) {
    Array out;
    for (const auto& f : fields) out.push_back(Object{{"key", f.key}, {"plan", dump_ptr(f.plan)}});
    return out;
}

struct Dumper {
    JsonValue operator()(const ConstPlan& p) const { return Object{{"plan", "const"}, {"value", p.value}}; }
    JsonValue operator()(const ChoicePlan& p) const {
        return Object{{"plan", "choice"}, {"index_bits", p.index_bits}, {"values", Array(p.values)}};
    }
    JsonValue operator()(const BoundedIntPlan& p) const {
        return Object{{"plan", "bounded-int"}, {"min", p.min},     {"max", p.max},
                      {"scale", p.scale},      {"range_bits", p.range_bits}};
    }
    JsonValue operator()(const VarIntPlan& p) const {
        switch (p.base) {
        case VarIntBase::floor: return Object{{"plan", "varint"}, {"floor", p.offset}};
        case VarIntBase::ceil: return Object{{"plan", "varint"}, {"ceil", p.offset}};
        case VarIntBase::none: break;
        }
        return Object{{"plan", "varint"}, {"zigzag", true}};
    }
    JsonValue operator()(const RealPlan&) const { return Object{{"plan", "real"}}; }
    JsonValue operator()(const StringPlan& p) const {
        Object o{{"plan", "string"}};
        if (p.max_length) o.insert("max_length", *p.max_length);
        return o;
    }
    JsonValue operator()(const BoolPlan&) const { return Object{{"plan", "bool"}}; }
    JsonValue operator()(const NullPlan&) const { return Object{{"plan", "null"}}; }
    JsonValue operator()(const ArrayPlan& p) const {
        Object o{{"plan", "array"}, {"min_count", p.min_count}};
        if (p.max_count) o.insert("max_count", *p.max_count);
        if (p.fixed_count) o.insert("fixed_count", *p.fixed_count);
        if (!p.prefix.empty()) {
            Array prefix;
            for (const auto& item : p.prefix) prefix.push_back(dump_ptr(item));
            o.insert("prefix", std::move(prefix));
        }
        o.insert("element", dump_ptr(p.element));
        return o;
    }
    JsonValue operator()(const ObjectPlan& p) const {
        return Object{{"plan", "object"},
                      {"required", dump_fields(p.required)},
                      {"optional", dump_fields(p.optional)},
                      {"additional", p.additional ? dump_ptr(p.additional) : JsonValue("closed")}};
    }
    JsonValue operator()(const UnionPlan& p) const {
        Array branches;
        for (const auto& b : p.branches) branches.push_back(dump_ptr(b.plan));
        return Object{{"plan", "union"}, {"tag_bits", p.tag_bits}, {"branches", std::move(branches)}};
    }
    JsonValue operator()(const AnyPlan&) const { return Object{{"plan", "any"}}; }
    JsonValue operator()(const RefPlan& p) const { return Object{{"plan", "ref"}, {"name", p.name}}; }
};

JsonValue dump(const PlanNode& node) {
    return std::visit(Dumper{}, node.node);
}

}  // namespace

std::uint8_t bits_for_count(std::uint64_t n) noexcept {
    return n <= 1 ? 0 : static_cast<std::uint8_t>(std::bit_width(n - 1));
}

EncodingPlan::EncodingPlan(PlanPtr root, std::map<std::string, PlanPtr> definitions,
                           std::shared_ptr<const CanonicalSchema> schema)
    : root_(std::move(root)), definitions_(std::move(definitions)), schema_(std::move(schema)) {}

const PlanNode& EncodingPlan::resolve(const std::string& name) const {
    auto it = definitions_.find(name);
    if (it == definitions_.end()) throw ReferenceError("undefined plan reference: " + name);
    return *it->second;
}

EncodingPlan build_plan(const CanonicalSchema& schema) {
    std::map<std::string, PlanPtr> definitions;
    for (const auto& [name, def] : schema.definitions) definitions.emplace(name, map_node(*def));
    return EncodingPlan(map_node(*schema.root), std::move(definitions),
                        std::make_shared<const CanonicalSchema>(schema));
}

const EncodingPlan& schemaless_plan() {
    static const EncodingPlan plan = build_plan(canonicalize(JsonValue(Object{})));
    return plan;
}

std::optional<std::uint64_t> plan_bit_bound(const EncodingPlan& plan) {
    return plan_bit_bound(plan, plan.root());
}

std::optional<std::uint64_t> plan_bit_bound(const EncodingPlan& plan, const PlanNode& node) {
    return BoundCalculator(plan).of(node);
}

JsonValue to_json(const EncodingPlan& plan) {
    Object out{{"root", dump(plan.root())}};
    if (!plan.definitions().empty()) {
        Object defs;
        for (const auto& [name, def] : plan.definitions()) defs.insert(name, dump(*def));
        out.insert("definitions", std::move(defs));
    }
    if (const auto bound = plan_bit_bound(plan)) out.insert("bit_bound", *bound);
    return out;
}

}  // namespace bitjson
