#pragma once

#include <stdexcept>
#include <string>

namespace sipot {

enum class ErrorKind {
    Domain,             // position outside an entry's domain
    Parameter,          // invalid entry parameter or constant
    Range,              // energy outside the valid range of an operation
    SpectrumExhausted,  // level index beyond the bound spectrum
    NoClassicalMotion,  // energy below the curve minimum
    Classification,     // Barclay class assumptions violated at a point
    Numeric,            // quadrature/root-finding failure
    Convergence,        // series failed to reach the requested tolerance
    Configuration,      // inconsistent grid/smoothing setup
    Truncation,         // eigensolver box does not contain the states
    UnknownEntry,       // no catalog entry with that name
    Usage,              // malformed command-line input
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace sipot
