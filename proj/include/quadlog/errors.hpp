#pragma once

#include <stdexcept>
#include <string>
#include <vector>
#include <cstdint>

namespace quadlog {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSquarefree : Error {
    explicit NotSquarefree(std::int64_t m)
        : Error("not squarefree: " + std::to_string(m)) {}
};

struct EvenPrime : Error {
    EvenPrime() : Error("p = 2 is out of scope") {}
};

struct NotSplit : Error {
    NotSplit(std::int64_t m, std::uint64_t p)
        : Error("p = " + std::to_string(p) + " does not split in Q(sqrt(-" +
                std::to_string(m) + "))") {}
};

struct BoundExceeded : Error {
    using Error::Error;
};

/* Raised when a generator is requested for a non-principal ideal.
   Carries the discrete log of the class when the caller computed one. */
struct NonPrincipal : Error {
    std::vector<std::int64_t> dlog;
    explicit NonPrincipal(std::vector<std::int64_t> dl = {})
        : Error("ideal is not principal"), dlog(std::move(dl)) {}
};

struct NonResidue : Error {
    using Error::Error;
    NonResidue() : Error("not a quadratic residue") {}
};

struct PrecisionExhausted : Error {
    PrecisionExhausted() : Error("p-adic precision exhausted") {}
};

struct NotIntegralAtP : Error {
    NotIntegralAtP() : Error("element not integral at p") {}
};

struct NotACube : Error {
    NotACube() : Error("norm is not a perfect cube") {}
};

struct OutOfRange : Error {
    using Error::Error;
};

struct InvalidLayers : Error {
    InvalidLayers() : Error("layer indices must satisfy n >= e >= ebar >= 0") {}
};

struct NoSurvivor : Error {
    std::string audit;
    explicit NoSurvivor(std::string a)
        : Error("radical sieve eliminated every candidate"), audit(std::move(a)) {}
};

struct ScriptFailure : Error {
    using Error::Error;
};

struct ParseFailure : Error {
    using Error::Error;
};

} // namespace quadlog
