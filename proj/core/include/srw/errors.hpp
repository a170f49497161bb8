#pragma once

#include <stdexcept>
#include <string>

namespace srw {

/// Invalid parameter or argument outside the domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// A series or integral whose convergence condition does not hold.
class DivergenceError : public DomainError
{
  public:
    using DomainError::DomainError;
};

/// Rejection sampler ran out of its attempt budget.
class RejectionExhausted : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace srw
