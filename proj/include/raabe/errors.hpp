#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace raabe {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `offset` is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Well-formed text that violates the term class (non-affine factorial, bad power, ...).
class DomainError : public Error {
public:
    DomainError(std::size_t offset, const std::string& message);
    explicit DomainError(const std::string& message);

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_ = 0;
};

class ExactUnavailable : public Error {
public:
    using Error::Error;
};

class EvaluatesToZero : public Error {
public:
    explicit EvaluatesToZero(std::int64_t n);

    std::int64_t index() const noexcept { return n_; }

private:
    std::int64_t n_;
};

class InsufficientSamples : public Error {
public:
    using Error::Error;
};

class RuleNotApplicable : public Error {
public:
    using Error::Error;
};

class NotAlternating : public Error {
public:
    using Error::Error;
};

class NotDecreasing : public Error {
public:
    using Error::Error;
};

}  // namespace raabe
