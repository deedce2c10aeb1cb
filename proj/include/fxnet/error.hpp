#pragma once

#include <stdexcept>
#include <string>

namespace fxnet {

// Error kinds map onto the CLI exit contract: input-ish kinds exit 2,
// numeric/internal kinds exit 1.
enum class ErrorKind {
    Parse,
    Validation,
    NotFound,
    Domain,
    Size,
    Degenerate,
    Numeric,
    Io,
    Http,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool is_input_error() const noexcept {
        switch (kind_) {
        case ErrorKind::Parse:
        case ErrorKind::Validation:
        case ErrorKind::NotFound:
        case ErrorKind::Domain:
        case ErrorKind::Size:
        case ErrorKind::Degenerate:
        case ErrorKind::Io:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorKind kind_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(ErrorKind::Parse, m) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& m) : Error(ErrorKind::Validation, m) {}
};
struct NotFoundError : Error {
    explicit NotFoundError(const std::string& m) : Error(ErrorKind::NotFound, m) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(ErrorKind::Domain, m) {}
};
struct SizeError : Error {
    explicit SizeError(const std::string& m) : Error(ErrorKind::Size, m) {}
};
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& m) : Error(ErrorKind::Degenerate, m) {}
};
struct NumericError : Error {
    explicit NumericError(const std::string& m) : Error(ErrorKind::Numeric, m) {}
};
struct IoError : Error {
    explicit IoError(const std::string& m) : Error(ErrorKind::Io, m) {}
};
struct HttpError : Error {
    explicit HttpError(const std::string& m) : Error(ErrorKind::Http, m) {}
};

} // namespace fxnet
