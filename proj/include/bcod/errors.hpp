#pragma once

#include <stdexcept>

namespace bcod {

// Base of everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An argument violated a documented precondition.
struct domain_error : error {
    using error::error;
};

// Byte/bit-length mismatch while rebuilding a bit vector.
struct malformed_input : error {
    using error::error;
};

// Statistic requested on an empty frequency table.
struct undefined_statistic : error {
    using error::error;
};

// Codebook construction over an empty alphabet.
struct empty_alphabet : error {
    using error::error;
};

// Encode hit a token class the book has no entry for.
struct incomplete_codebook : error {
    using error::error;
};

// Payload ended in the middle of a codeword.
struct truncated_payload : error {
    using error::error;
};

// Payload bits match no codeword at some position.
struct invalid_payload : error {
    using error::error;
};

// Container bytes are not a valid archive (magic, version, mode, varint, layout).
struct format_error : error {
    using error::error;
};

// Filesystem access failed.
struct io_error : error {
    using error::error;
};

} // namespace bcod
