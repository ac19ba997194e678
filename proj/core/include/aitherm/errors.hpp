// Error types shared across the library. Conditions that are ordinary
// outcomes of a computation (halting status, divergence probes, complexity
// searches) are returned as values, not thrown.
#pragma once

#include <stdexcept>
#include <string>

namespace aitherm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// rigor
struct DivisionByZeroInterval : Error {
  DivisionByZeroInterval() : Error("interval division: divisor contains zero") {}
};
struct NonPositiveArgument : Error {
  explicit NonPositiveArgument(const std::string& what) : Error(what) {}
};
struct PrecisionError : Error {
  explicit PrecisionError(const std::string& what) : Error(what) {}
};

// core / spectra
struct InvalidBitString : Error {
  explicit InvalidBitString(const std::string& what) : Error(what) {}
};
struct InvalidSpectrum : Error {
  explicit InvalidSpectrum(const std::string& what) : Error(what) {}
};
struct NotPrefixFree : Error {
  explicit NotPrefixFree(const std::string& what) : Error(what) {}
};
struct TailUnbounded : Error {
  explicit TailUnbounded(const std::string& what) : Error(what) {}
};

// thermo
struct ZoneError : Error {
  explicit ZoneError(const std::string& what) : Error(what) {}
};
struct NoConvergenceCertificate : Error {
  explicit NoConvergenceCertificate(const std::string& what) : Error(what) {}
};
struct EmptySpectrum : Error {
  explicit EmptySpectrum(const std::string& what) : Error(what) {}
};

// machines / compose
struct UnknownMachine : Error {
  explicit UnknownMachine(const std::string& name) : Error("unknown machine: " + name) {}
};
struct InvalidMachine : Error {
  explicit InvalidMachine(const std::string& what) : Error(what) {}
};
struct EmptyDomain : Error {
  explicit EmptyDomain(const std::string& what) : Error(what) {}
};
struct PredicateFailed : Error {
  explicit PredicateFailed(const std::string& what) : Error(what) {}
};

// randomness
struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

// io
struct SpecParseError : Error {
  explicit SpecParseError(const std::string& what) : Error(what) {}
};
struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace aitherm
