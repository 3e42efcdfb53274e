#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace augtor {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Zero or otherwise meaningless input (zero polynomial where a nonzero one
// is required, empty matrix, r < 1, ...).
struct degenerate_input_error : error {
    using error::error;
};

// An exact division was requested but the quotient does not exist in the ring.
struct divisibility_error : error {
    using error::error;
};

// Argument outside the operation's domain (bad index, composite p, deg 0
// where deg >= 1 is needed, non-divisor modulus, ...).
struct domain_error : error {
    using error::error;
};

// A computation was refused because it would exceed a configured size guard.
struct resource_error : error {
    using error::error;
};

// Input violates a structural hypothesis the result depends on
// (e.g. p | g(1) where p coprime to g(1) is required).
struct hypothesis_error : error {
    using error::error;
};

// Two routes that must agree exactly disagreed, or an exact identity failed.
// Seeing this means a bug, not bad input.
struct consistency_error : error {
    using error::error;
};

// Requested accuracy could not be certified by the numeric kernel.
struct precision_error : error {
    using error::error;
};

// Text input rejected; position is a 0-based byte offset into the input.
struct parse_error : error {
    parse_error(const std::string& what, std::size_t position)
        : error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// File-level problem when loading a matrix or other structured input.
struct load_error : error {
    using error::error;
};

}  // namespace augtor
