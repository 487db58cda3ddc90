#pragma once

// Fermat rationals z^n / (x^n + y^n) held as exact reduced fractions.

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "zladder/errors.hpp"

namespace zladder {

using BigInt = boost::multiprecision::cpp_int;

class FermatRational {
 public:
  FermatRational(BigInt x, BigInt y, BigInt z, int n) : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), n_(n) {
    if (x_ < 1 || y_ < 1 || z_ < 1) throw domain_error("fermat_rational: x, y, z must be >= 1");
    if (n_ < 2) throw domain_error("fermat_rational: n must be >= 2");
    using boost::multiprecision::pow;
    num_ = pow(z_, static_cast<unsigned>(n_));
    den_ = pow(x_, static_cast<unsigned>(n_)) + pow(y_, static_cast<unsigned>(n_));
    const BigInt g = boost::multiprecision::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  const BigInt& x() const { return x_; }
  const BigInt& y() const { return y_; }
  const BigInt& z() const { return z_; }
  int n() const { return n_; }

  /// Reduced numerator and denominator.
  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  /// Exact: z^n == x^n + y^n.
  bool is_one() const { return num_ == den_; }

  double real_value() const {
    // divide in 50-digit binary float so huge num/den do not overflow a double
    using boost::multiprecision::cpp_bin_float_50;
    return static_cast<double>(cpp_bin_float_50(num_) / cpp_bin_float_50(den_));
  }

  std::string str() const { return num_.str() + "/" + den_.str(); }
  std::string tuple_str() const {
    return "(" + x_.str() + "," + y_.str() + "," + z_.str() + "," + std::to_string(n_) + ")";
  }

 private:
  BigInt x_, y_, z_;
  int n_;
  BigInt num_, den_;
};

inline FermatRational fermat_rational(const BigInt& x, const BigInt& y, const BigInt& z, int n) {
  return FermatRational(x, y, z, n);
}

}  // namespace zladder
