#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pherm {

/// Base class for failures of a numerical procedure (as opposed to bad input,
/// which is reported with std::invalid_argument).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The shifted QR iteration exhausted its iteration budget.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(std::size_t window_end, std::size_t iterations)
      : NumericalError("eigenvalue iteration did not converge for deflation window ending at index " +
                       std::to_string(window_end) + " after " + std::to_string(iterations) +
                       " iterations"),
        window_end_(window_end) {}

  std::size_t window_end() const noexcept { return window_end_; }

 private:
  std::size_t window_end_;
};

/// An eigenvalue off the real axis had no conjugate partner.
class ClassificationError : public NumericalError {
 public:
  ClassificationError(std::size_t index, const std::string& detail)
      : NumericalError("conjugate pairing failed for eigenvalue " + std::to_string(index) + ": " + detail),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A Monte Carlo sample failed; wraps the underlying message with its index.
class SampleError : public NumericalError {
 public:
  SampleError(std::size_t sample_index, const std::string& detail)
      : NumericalError("sample " + std::to_string(sample_index) + ": " + detail), sample_index_(sample_index) {}

  std::size_t sample_index() const noexcept { return sample_index_; }

 private:
  std::size_t sample_index_;
};

}  // namespace pherm
