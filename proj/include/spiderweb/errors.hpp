#pragma once

#include <stdexcept>
#include <string>

namespace spiderweb {

/// Malformed input: inconsistent arrays, bad ids, unparsable files.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation called outside its domain (zero function, empty set, bad radius, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested computation exceeds a documented size limit.
class SizeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A precondition of a construction step does not hold for the given input.
class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Parameters produce an unusable object (e.g. valence ceiling exceeded).
class ConfigurationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Sampled sphere nets are too sparse to keep parent distances near 2.
class NetQualityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Internal invariant broken. Never expected on valid input.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace spiderweb
