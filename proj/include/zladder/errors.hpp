#pragma once

#include <stdexcept>
#include <string>

namespace zladder {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. t < 1 for theta).
class domain_error : public error {
 public:
  using error::error;
};

/// Query outside a tabulated range, or a result that would leave it.
/// `required` carries the domain size that would have been needed, when known.
class range_error : public error {
 public:
  explicit range_error(const std::string& what, double required = 0.0)
      : error(what), required_(required) {}
  double required() const noexcept { return required_; }

 private:
  double required_;
};

/// Iterative method gave up. Carries the best estimate reached.
class convergence_error : public error {
 public:
  convergence_error(const std::string& what, double best, double err)
      : error(what), best_(best), err_(err) {}
  double best_estimate() const noexcept { return best_; }
  double achieved_error() const noexcept { return err_; }

 private:
  double best_;
  double err_;
};

/// Allocation or work budget exceeded.
class resource_error : public error {
 public:
  using error::error;
};

/// Bad user input at the command-line / config layer.
class usage_error : public error {
 public:
  using error::error;
};

}  // namespace zladder
