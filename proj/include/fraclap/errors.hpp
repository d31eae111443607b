#pragma once

#include <stdexcept>
#include <string>

namespace fraclap {

// Math-domain violations (bad argument ranges, length mismatches) are reported
// with std::domain_error; ineligible bound indices with std::out_of_range.

/// Quadrature or iteration did not reach its target; carries the achieved
/// error estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A dense solve or decomposition that finished but missed its residual target.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Malformed input file or command-line value.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fraclap
