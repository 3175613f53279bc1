#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bitjson {

/// Append-only MSB-first bit sink. Bits past the cursor in the last byte are
/// always zero, so `finish()` pads with zeros.
class BitWriter {
public:
    /// Appends the low `width` bits of `value` (0 <= width <= 64), most
    /// significant first. Bits of `value` above `width` must be zero.
    void write_bits(std::uint64_t value, unsigned width);

    void write_bit(bool bit) { write_bits(bit ? 1u : 0u, 1); }

    /// Appends whole bytes at the current (possibly unaligned) cursor.
    void write_bytes(std::span<const std::uint8_t> bytes);

    /// LEB128: 8-bit groups, low 7 bits first, high bit = continuation.
    void write_uvarint(std::uint64_t value);

    std::uint64_t bit_size() const noexcept { return bits_; }
    std::size_t byte_size() const noexcept { return buffer_.size(); }

    /// The padded byte string; the writer stays usable.
    const std::vector<std::uint8_t>& bytes() const noexcept { return buffer_; }
    std::vector<std::uint8_t> finish() && { return std::move(buffer_); }

private:
    std::vector<std::uint8_t> buffer_;
    std::uint64_t bits_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) noexcept : bytes_(bytes) {}

    /// Throws DecodeError(truncated) when fewer than `width` bits remain.
    std::uint64_t read_bits(unsigned width);
    bool read_bit() { return read_bits(1) != 0; }

    void read_bytes(std::span<std::uint8_t> out);

    /// Throws DecodeError(overflow) past ten groups or beyond 64 bits.
    std::uint64_t read_uvarint();

    std::uint64_t position() const noexcept { return cursor_; }
    std::uint64_t remaining() const noexcept { return bytes_.size() * 8 - cursor_; }

    /// Checks the stream ends here: fewer than 8 bits left, all zero.
    void expect_end() const;

private:
    void require(std::uint64_t bits) const;

    std::span<const std::uint8_t> bytes_;
    std::uint64_t cursor_ = 0;
};

std::uint64_t zigzag(std::int64_t n) noexcept;
std::int64_t unzigzag(std::uint64_t z) noexcept;

/// Number of LEB128 groups for `value` (1..10).
unsigned uvarint_length(std::uint64_t value) noexcept;

}  // namespace bitjson
