#pragma once

#include <cstdint>
#include <string>

#include "bitjson/bitstream.hpp"
#include "bitjson/codec.hpp"
#include "bitjson/json_value.hpp"

namespace bitjson::detail {

/// sign * digits as an integer, or nullopt past 64 bits.
std::optional<std::int64_t> real_mantissa(const Real& r);

Real real_from_parts(std::int64_t mantissa, std::int64_t exponent);

void write_string_bytes(BitWriter& w, std::string_view s);
std::string read_string_bytes(BitReader& r, std::uint64_t length);

/// uvarint(0) + uvarint(index) for a pooled string, else uvarint(len + 1) + bytes.
void write_pooled_string(BitWriter& w, StringPool& pool, std::string_view s);
std::string read_pooled_string(BitReader& r, StringPool& pool);

}  // namespace bitjson::detail
