#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyprod {

enum class ErrorKind {
    invalid_argument,
    precondition,
    parse,
    partial_factorization,
    no_convergence,
    internal,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_argument: return "invalid_argument";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::parse: return "parse";
        case ErrorKind::partial_factorization: return "partial_factorization";
        case ErrorKind::no_convergence: return "no_convergence";
        case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

class ParseError : public Error {
  public:
    ParseError(std::size_t position, const std::string& what)
        : Error(ErrorKind::parse, what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::precondition, what);
}

}  // namespace polyprod
