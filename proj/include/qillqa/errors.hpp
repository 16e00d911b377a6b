#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qillqa {

// Error taxonomy mirrored by the CLI exit codes (see tools/qillqa.cpp):
// parse = 2, validation = 3, capacity = 4, io = 5.

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input documents (JSON syntax, bad field types, invalid UTF-8).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Structurally well-formed input that violates a domain invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Instance does not fit the requested operation (too many graphemes, too few slots).
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Invalid UTF-8 input; carries the byte offset of the offending sequence.
class Utf8Error : public ParseError {
public:
    Utf8Error(const std::string& msg, std::size_t byte_offset)
        : ParseError(msg + " at byte offset " + std::to_string(byte_offset)),
          byte_offset_(byte_offset) {}

    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

} // namespace qillqa
