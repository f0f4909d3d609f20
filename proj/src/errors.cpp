#include "raabe/errors.hpp"

#include <utility>

namespace raabe {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message)
    : Error(message), offset_(offset), expected_(std::move(expected))
{
}

DomainError::DomainError(std::size_t offset, const std::string& message)
    : Error(message), offset_(offset)
{
}

DomainError::DomainError(const std::string& message)
    : Error(message)
{
}

EvaluatesToZero::EvaluatesToZero(std::int64_t n)
    : Error("term evaluates to zero at n = " + std::to_string(n)), n_(n)
{
}

}  // namespace raabe
