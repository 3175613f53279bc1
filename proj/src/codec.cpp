#include <limits>

#include "bitjson/error.hpp"
#include "codec_internal.hpp"

namespace bitjson {
namespace {

[[noreturn]] void mismatch(const std::string& reason) {
    throw SchemaMismatch("$", reason);
}

std::int64_t integer_of(const JsonValue& v) {
    const auto n = integral_value(v);
    if (!n) mismatch("expected integer");
    return *n;
}

class Encoder {
public:
    Encoder(const EncodingPlan& plan, const StringPool::Observer& observer) : plan_(plan), pool_(observer) {}

    void put(const PlanNode& node, const JsonValue& v) {
        std::visit([&](const auto& p) { emit(p, v); }, node.node);
    }

    std::vector<std::uint8_t> finish() && { return std::move(w_).finish(); }

private:
    void emit(const ConstPlan&, const JsonValue&) {}

    void emit(const ChoicePlan& p, const JsonValue& v) {
        for (std::size_t i = 0; i < p.values.size(); ++i) {
            if (json_equal(p.values[i], v)) {
                w_.write_bits(i, p.index_bits);
                return;
            }
        }
        mismatch("value not in enumeration");
    }

    void emit(const BoundedIntPlan& p, const JsonValue& v) {
        const std::int64_t n = integer_of(v);
        if (n < p.min || n > p.max) mismatch("integer out of range");
        const std::uint64_t offset = static_cast<std::uint64_t>(n) - static_cast<std::uint64_t>(p.min);
        w_.write_bits(offset / static_cast<std::uint64_t>(p.scale), p.range_bits);
    }

    void emit(const VarIntPlan& p, const JsonValue& v) {
        const std::int64_t n = integer_of(v);
        switch (p.base) {
        case VarIntBase::floor:
            if (n < p.offset) mismatch("integer below minimum");
            w_.write_uvarint(static_cast<std::uint64_t>(n) - static_cast<std::uint64_t>(p.offset));
            return;
        case VarIntBase::ceil:
            if (n > p.offset) mismatch("integer above maximum");
            w_.write_uvarint(static_cast<std::uint64_t>(p.offset) - static_cast<std::uint64_t>(n));
            return;
        case VarIntBase::none: w_.write_uvarint(zigzag(n)); return;
        }
    }

    void emit(const RealPlan&, const JsonValue& v) {
        if (!v.is_number()) mismatch("expected number");
        const Real r = v.as_decimal();
        const auto mantissa = detail::real_mantissa(r);
        if (!mantissa) throw EncodeError("number has more significant digits than 64 bits hold: " + minify(v));
        w_.write_uvarint(zigzag(*mantissa));
        w_.write_uvarint(zigzag(r.exponent));
    }

    void emit(const StringPlan&, const JsonValue& v) {
        if (!v.is_string()) mismatch("expected string");
        detail::write_pooled_string(w_, pool_, v.as_string());
    }

    void emit(const BoolPlan&, const JsonValue& v) {
        if (!v.is_bool()) mismatch("expected boolean");
        w_.write_bit(v.as_bool());
    }

    void emit(const NullPlan&, const JsonValue&) {}

    void emit(const ArrayPlan& p, const JsonValue& v) {
        if (!v.is_array()) mismatch("expected array");
        const Array& items = v.as_array();
        if (!p.fixed_count) w_.write_uvarint(items.size() - p.min_count);
        for (std::size_t i = 0; i < items.size(); ++i) put(i < p.prefix.size() ? *p.prefix[i] : *p.element, items[i]);
    }

    void emit(const ObjectPlan& p, const JsonValue& v) {
        if (!v.is_object()) mismatch("expected object");
        const Object& o = v.as_object();
        for (const auto& f : p.optional) w_.write_bit(o.contains(f.key));
        for (const auto& f : p.required) {
            const JsonValue* member = o.find(f.key);
            if (member == nullptr) mismatch("missing required property " + f.key);
            put(*f.plan, *member);
        }
        for (const auto& f : p.optional) {
            if (const JsonValue* member = o.find(f.key)) put(*f.plan, *member);
        }
        if (!p.additional) return;
        std::vector<const Object::Member*> extra;
        for (const auto& member : o) {
            if (!declared(p, member.first)) extra.push_back(&member);
        }
        w_.write_uvarint(extra.size());
        for (const auto* member : extra) {
            detail::write_pooled_string(w_, pool_, member->first);
            put(*p.additional, member->second);
        }
    }

    void emit(const UnionPlan& p, const JsonValue& v) {
        for (std::size_t i = 0; i < p.branches.size(); ++i) {
            if (validate(plan_.schema(), *p.branches[i].guard, v)) {
                w_.write_bits(i, p.tag_bits);
                put(*p.branches[i].plan, v);
                return;
            }
        }
        mismatch("no union branch accepts the value");
    }

    void emit(const AnyPlan&, const JsonValue& v) { encode_any(v, pool_, w_); }

    void emit(const RefPlan& p, const JsonValue& v) { put(plan_.resolve(p.name), v); }

    static bool declared(const ObjectPlan& p, const std::string& key) {
        for (const auto& f : p.required) {
            if (f.key == key) return true;
        }
        for (const auto& f : p.optional) {
            if (f.key == key) return true;
        }
        return false;
    }

    const EncodingPlan& plan_;
    StringPool pool_;
    BitWriter w_;
};

class Decoder {
public:
    Decoder(const EncodingPlan& plan, std::span<const std::uint8_t> bytes, const StringPool::Observer& observer)
        : plan_(plan), pool_(observer), r_(bytes) {}

    JsonValue get(const PlanNode& node) {
        if (depth_ >= max_decode_depth) throw DecodeError(DecodeFault::invalid_value, "nesting too deep");
        ++depth_;
        JsonValue v = std::visit([&](const auto& p) { return take(p); }, node.node);
        --depth_;
        return v;
    }

    void finish() const { r_.expect_end(); }

private:
    JsonValue take(const ConstPlan& p) { return p.value; }

    JsonValue take(const ChoicePlan& p) {
        const std::uint64_t index = r_.read_bits(p.index_bits);
        if (index >= p.values.size()) {
            throw DecodeError(DecodeFault::invalid_choice, "index " + std::to_string(index) + " of " +
                                                               std::to_string(p.values.size()));
        }
        return p.values[index];
    }

    JsonValue take(const BoundedIntPlan& p) {
        const std::uint64_t steps = r_.read_bits(p.range_bits);
        const std::uint64_t span = static_cast<std::uint64_t>(p.max) - static_cast<std::uint64_t>(p.min);
        if (steps > span / static_cast<std::uint64_t>(p.scale)) {
            throw DecodeError(DecodeFault::invalid_value, "bounded integer out of range");
        }
        return static_cast<std::int64_t>(static_cast<std::uint64_t>(p.min) + steps * static_cast<std::uint64_t>(p.scale));
    }

    JsonValue take(const VarIntPlan& p) {
        const std::uint64_t u = r_.read_uvarint();
        constexpr auto top = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
        switch (p.base) {
        case VarIntBase::floor:
            if (u > top - static_cast<std::uint64_t>(p.offset)) throw DecodeError(DecodeFault::overflow, "integer past 64 bits");
            return static_cast<std::int64_t>(static_cast<std::uint64_t>(p.offset) + u);
        case VarIntBase::ceil:
            // offset - u >= INT64_MIN  <=>  u <= offset - INT64_MIN
            if (u > static_cast<std::uint64_t>(p.offset) + top + 1) {
                throw DecodeError(DecodeFault::overflow, "integer past 64 bits");
            }
            return static_cast<std::int64_t>(static_cast<std::uint64_t>(p.offset) - u);
        case VarIntBase::none: break;
        }
        return unzigzag(u);
    }

    JsonValue take(const RealPlan&) {
        const std::int64_t mantissa = unzigzag(r_.read_uvarint());
        return detail::real_from_parts(mantissa, unzigzag(r_.read_uvarint()));
    }

    JsonValue take(const StringPlan&) { return detail::read_pooled_string(r_, pool_); }

    JsonValue take(const BoolPlan&) { return r_.read_bit(); }

    JsonValue take(const NullPlan&) { return nullptr; }

    JsonValue take(const ArrayPlan& p) {
        std::uint64_t count = 0;
        if (p.fixed_count) {
            count = *p.fixed_count;
        } else {
            const std::uint64_t extra = r_.read_uvarint();
            if (extra > (std::uint64_t{1} << 24) + r_.remaining()) {
                throw DecodeError(DecodeFault::invalid_value, "array count exceeds stream");
            }
            count = p.min_count + extra;
            if (p.max_count && count > *p.max_count) throw DecodeError(DecodeFault::invalid_value, "array longer than maxItems");
        }
        Array items;
        items.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) items.push_back(get(i < p.prefix.size() ? *p.prefix[i] : *p.element));
        return items;
    }

    JsonValue take(const ObjectPlan& p) {
        std::vector<bool> present(p.optional.size());
        for (std::size_t i = 0; i < present.size(); ++i) present[i] = r_.read_bit();
        Object o;
        for (const auto& f : p.required) o.insert(f.key, get(*f.plan));
        for (std::size_t i = 0; i < present.size(); ++i) {
            if (present[i]) o.insert(p.optional[i].key, get(*p.optional[i].plan));
        }
        if (!p.additional) return o;
        const std::uint64_t count = r_.read_uvarint();
        if (count > r_.remaining() / 8) throw DecodeError(DecodeFault::truncated, "object size exceeds stream");
        for (std::uint64_t i = 0; i < count; ++i) {
            std::string key = detail::read_pooled_string(r_, pool_);
            JsonValue value = get(*p.additional);
            if (!o.insert(std::move(key), std::move(value))) {
                throw DecodeError(DecodeFault::invalid_value, "duplicate object key");
            }
        }
        return o;
    }

    JsonValue take(const UnionPlan& p) {
        const std::uint64_t tag = r_.read_bits(p.tag_bits);
        if (tag >= p.branches.size()) throw DecodeError(DecodeFault::invalid_tag, "union branch " + std::to_string(tag));
        return get(*p.branches[tag].plan);
    }

    JsonValue take(const AnyPlan&) { return decode_any(r_, pool_, depth_); }

    JsonValue take(const RefPlan& p) { return get(plan_.resolve(p.name)); }

    const EncodingPlan& plan_;
    StringPool pool_;
    BitReader r_;
    unsigned depth_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode(const JsonValue& value, const EncodingPlan& plan, const StringPool::Observer& observer) {
    if (auto violation = find_violation(plan.schema(), value)) throw SchemaMismatch(violation->path, violation->reason);
    Encoder encoder(plan, observer);
    encoder.put(plan.root(), value);
    return std::move(encoder).finish();
}

JsonValue decode(std::span<const std::uint8_t> bytes, const EncodingPlan& plan, const StringPool::Observer& observer) {
    Decoder decoder(plan, bytes, observer);
    JsonValue value = decoder.get(plan.root());
    decoder.finish();
    return value;
}

std::vector<std::uint8_t> encode_schemaless(const JsonValue& value) {
    return encode(value, schemaless_plan());
}

JsonValue decode_schemaless(std::span<const std::uint8_t> bytes) {
    return decode(bytes, schemaless_plan());
}

}  // namespace bitjson
