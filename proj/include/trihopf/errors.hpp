#pragma once

#include <stdexcept>
#include <string>

namespace trihopf {

// Precondition violated by the caller (bad input data).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured size bound was exceeded.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text input could not be parsed. `position` is a byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A self-check failed; indicates a bug or corrupted data, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace trihopf
