#pragma once

#include <stdexcept>
#include <string>

namespace homred {

// Base for every error raised by the library. The message is prefixed with
// the module that detected the problem, e.g. "graph_core: line 3: self-loop".
class Error : public std::runtime_error
{
public:
    Error(const std::string & module, const std::string & what) :
        std::runtime_error(module + ": " + what)
    {
    }
};

// Malformed input text; carries the offending 1-based line number (0 when the
// problem is not tied to a single line).
class ParseError : public Error
{
public:
    ParseError(const std::string & module, std::size_t line, const std::string & what) :
        Error(module, line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line)
    {
    }

    auto line() const -> std::size_t { return line_; }

private:
    std::size_t line_;
};

// An operation was invoked outside its precondition.
class PreconditionError : public Error
{
public:
    using Error::Error;
};

// An enumeration would exceed the configured cap.
class CapacityError : public Error
{
public:
    using Error::Error;
};

}
