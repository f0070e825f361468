#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sqgeom {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidPrimeError final : public Error {
public:
    using Error::Error;
};

class DivisionByZeroError final : public Error {
public:
    using Error::Error;
};

class FieldMismatchError final : public Error {
public:
    using Error::Error;
};

class EvenCharacteristicError final : public Error {
public:
    using Error::Error;
};

class NonstandardFieldError final : public Error {
public:
    using Error::Error;
};

class EmptyInputError final : public Error {
public:
    using Error::Error;
};

class DegenerateSubspaceError final : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError final : public Error {
public:
    using Error::Error;
};

class ClassMismatchError final : public Error {
public:
    using Error::Error;
};

class IsotropicVectorError final : public Error {
public:
    using Error::Error;
};

class EmptyFlagError final : public Error {
public:
    using Error::Error;
};

class FlagNotInGeometryError final : public Error {
public:
    using Error::Error;
};

class NotATriangleError final : public Error {
public:
    using Error::Error;
};

class InternalError final : public Error {
public:
    using Error::Error;
};

/// Thrown when an enumeration or construction would exceed its configured cap.
/// Carries the bound that was violated.
class BudgetExceededError final : public Error {
public:
    BudgetExceededError(const std::string& what, std::uint64_t bound)
        : Error(what), bound_(bound) {}
    std::uint64_t bound() const { return bound_; }

private:
    std::uint64_t bound_;
};

} // namespace sqgeom
