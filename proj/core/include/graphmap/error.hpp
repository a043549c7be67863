#pragma once

#include <stdexcept>
#include <string>

namespace graphmap {

// Bad or malformed user input: unreadable files, parse failures, values that
// violate a documented precondition. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse failure with the offending 1-based line number.
class ParseError : public InputError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Structurally valid input that a stage cannot process (empty graph after
// pruning, edgeless modularity, impossible coloring).
class ValidationError : public InputError {
public:
    using InputError::InputError;
};

}  // namespace graphmap
