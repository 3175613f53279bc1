#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bitjson {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed JSON text. `offset` is the byte position where parsing stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A numeric literal the value model cannot hold losslessly.
class UnsupportedNumber : public ParseError {
public:
    using ParseError::ParseError;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class ReferenceError : public SchemaError {
public:
    using SchemaError::SchemaError;
};

/// The value does not conform to the plan it is being encoded with.
class SchemaMismatch : public Error {
public:
    SchemaMismatch(std::string path, const std::string& reason)
        : Error(path + ": " + reason), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class EncodeError : public Error {
public:
    using Error::Error;
};

enum class DecodeFault {
    truncated,
    overflow,
    invalid_choice,
    invalid_value,
    nonzero_padding,
    trailing_data,
    malformed_utf8,
    pool_index,
    reserved_tag,
    invalid_tag,
    bad_frame,
};

const char* to_string(DecodeFault fault) noexcept;

class DecodeError : public Error {
public:
    DecodeError(DecodeFault fault, const std::string& detail)
        : Error(std::string(to_string(fault)) + ": " + detail), fault_(fault) {}

    DecodeFault fault() const noexcept { return fault_; }

private:
    DecodeFault fault_;
};

/// A benchmark case failed the lossless round-trip gate.
class FairnessError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace bitjson
