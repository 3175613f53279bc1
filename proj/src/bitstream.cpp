#include "bitjson/bitstream.hpp"

#include <bit>
#include <cassert>
#include <cstring>

#include "bitjson/error.hpp"
#include "bitjson/kernels.hpp"

namespace bitjson {

void BitWriter::write_bits(std::uint64_t value, unsigned width) {
    assert(width <= 64);
    assert(width == 64 || (value >> width) == 0);
    while (width > 0) {
        const unsigned used = static_cast<unsigned>(bits_ & 7);
        if (used == 0) buffer_.push_back(0);
        const unsigned room = 8 - used;
        const unsigned take = width < room ? width : room;
        const auto chunk = static_cast<std::uint8_t>((value >> (width - take)) & ((1u << take) - 1));
        buffer_.back() = static_cast<std::uint8_t>(buffer_.back() | (chunk << (room - take)));
        width -= take;
        bits_ += take;
    }
}

void BitWriter::write_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.empty()) return;
    const unsigned used = static_cast<unsigned>(bits_ & 7);
    if (used == 0) {
        buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
    } else {
        const std::size_t at = buffer_.size() - 1;
        buffer_.resize(buffer_.size() + bytes.size());
        kernels::active().shift_append(buffer_.data() + at, bytes.data(), bytes.size(), used);
    }
    bits_ += static_cast<std::uint64_t>(bytes.size()) * 8;
}

void BitWriter::write_uvarint(std::uint64_t value) {
    while (value >= 0x80) {
        write_bits((value & 0x7F) | 0x80, 8);
        value >>= 7;
    }
    write_bits(value, 8);
}

void BitReader::require(std::uint64_t bits) const {
    if (bits > remaining()) {
        throw DecodeError(DecodeFault::truncated, "needed " + std::to_string(bits) + " bits at bit " +
                                                      std::to_string(cursor_) + ", " +
                                                      std::to_string(remaining()) + " left");
    }
}

std::uint64_t BitReader::read_bits(unsigned width) {
    assert(width <= 64);
    require(width);
    std::uint64_t value = 0;
    while (width > 0) {
        const unsigned used = static_cast<unsigned>(cursor_ & 7);
        const unsigned room = 8 - used;
        const unsigned take = width < room ? width : room;
        const std::uint8_t byte = bytes_[static_cast<std::size_t>(cursor_ >> 3)];
        const unsigned chunk = (byte >> (room - take)) & ((1u << take) - 1);
        value = (value << take) | chunk;
        width -= take;
        cursor_ += take;
    }
    return value;
}

void BitReader::read_bytes(std::span<std::uint8_t> out) {
    if (out.empty()) return;
    require(static_cast<std::uint64_t>(out.size()) * 8);
    const std::size_t at = static_cast<std::size_t>(cursor_ >> 3);
    const unsigned used = static_cast<unsigned>(cursor_ & 7);
    if (used == 0) {
        std::memcpy(out.data(), bytes_.data() + at, out.size());
    } else {
        kernels::active().shift_extract(out.data(), bytes_.data() + at, out.size(), used);
    }
    cursor_ += static_cast<std::uint64_t>(out.size()) * 8;
}

std::uint64_t BitReader::read_uvarint() {
    std::uint64_t value = 0;
    for (unsigned group = 0; group < 10; ++group) {
        const auto byte = read_bits(8);
        const std::uint64_t payload = byte & 0x7F;
        if (group == 9 && payload > 1) {
            throw DecodeError(DecodeFault::overflow, "varint exceeds 64 bits");
        }
        value |= payload << (7 * group);
        if ((byte & 0x80) == 0) return value;
    }
    throw DecodeError(DecodeFault::overflow, "varint longer than 10 groups");
}

void BitReader::expect_end() const {
    const std::uint64_t left = remaining();
    if (left >= 8) {
        throw DecodeError(DecodeFault::trailing_data, std::to_string(left / 8) + " unread bytes");
    }
    if (left > 0) {
        const std::uint8_t last = bytes_.back();
        if ((last & ((1u << left) - 1)) != 0) {
            throw DecodeError(DecodeFault::nonzero_padding, std::to_string(left) + " padding bits");
        }
    }
}

std::uint64_t zigzag(std::int64_t n) noexcept {
    return (static_cast<std::uint64_t>(n) << 1) ^ static_cast<std::uint64_t>(n >> 63);
}

std::int64_t unzigzag(std::uint64_t z) noexcept {
    return static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
}

unsigned uvarint_length(std::uint64_t value) noexcept {
    const unsigned bits = static_cast<unsigned>(std::bit_width(value));
    return bits == 0 ? 1 : (bits + 6) / 7;
}

}  // namespace bitjson
