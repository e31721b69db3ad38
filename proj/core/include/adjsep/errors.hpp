#pragma once

#include <stdexcept>
#include <string>

namespace adjsep {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownNode : public Error {
public:
    explicit UnknownNode(const std::string& id) : Error("unknown node '" + id + "'"), id_(id) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

class InvalidGraph : public Error {
public:
    using Error::Error;
};

// query preconditions: overlapping sets, I outside R, and similar
class InvalidQuery : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace adjsep
