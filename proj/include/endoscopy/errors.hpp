#pragma once
#include <stdexcept>
#include <string>

namespace endo {

// Thrown when an operation is called outside its stated domain
// (non-unit where a unit is required, wrong symmetry, p = 2, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Thrown when truncated p-adic arithmetic would drop below one known digit,
// or when an elimination pivot loses more digits than the configured bound.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a computation is well posed but exceeds the supported desk
// scale (factorization caps, rank limits).  Never silently degraded.
class ScaleError : public std::runtime_error {
public:
    explicit ScaleError(const std::string& what) : std::runtime_error(what) {}
};

// Valuation of zero; finite valuations are always far below this.
inline constexpr long VAL_INF = 1L << 40;

} // namespace endo
