#ifndef RECO_ERRORS_HPP_
#define RECO_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reco {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input row. `line()` is 1-based and counts the header.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IntegrityError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Two rating vectors share no co-rated item.
class NoOverlapError : public Error {
public:
    using Error::Error;
};

/// The query user has no nonzero weight in the requested mode.
class NoProfileError : public Error {
public:
    using Error::Error;
};

class EmptyDatasetError : public Error {
public:
    using Error::Error;
};

class ExperimentError : public Error {
public:
    using Error::Error;
};

} // namespace reco

#endif // RECO_ERRORS_HPP_
