#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qrg {

using Int = boost::multiprecision::cpp_int;

/// Exact Gaussian dyadic scalar (re + im*i) / 2^r.
///
/// Canonical form: r == 0, or at least one of re, im is odd. Every
/// arithmetic result is renormalized, so equality is plain structural
/// comparison. Values with r <= 52 and numerators below 2^52 convert
/// to complex<double> without rounding.
class Dyadic {
 public:
  Dyadic() : re_(0), im_(0), r_(0) {}
  Dyadic(long long v) : re_(v), im_(0), r_(0) {}
  Dyadic(Int re, Int im, std::uint32_t r) : re_(std::move(re)), im_(std::move(im)), r_(r) {
    normalize();
  }

  static Dyadic i() { return Dyadic(0, 1, 0); }
  /// 1 / 2^k.
  static Dyadic half_pow(std::uint32_t k) { return Dyadic(1, 0, k); }

  const Int& num_re() const { return re_; }
  const Int& num_im() const { return im_; }
  std::uint32_t exponent() const { return r_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  /// True when the value is a (Gaussian) integer, i.e. r == 0.
  bool is_integer() const { return r_ == 0; }

  Dyadic operator-() const { return Dyadic(-re_, -im_, r_, no_normalize{}); }
  Dyadic conj() const { return Dyadic(re_, -im_, r_, no_normalize{}); }

  friend Dyadic operator+(const Dyadic& x, const Dyadic& y) {
    if (x.r_ == y.r_) return Dyadic(x.re_ + y.re_, x.im_ + y.im_, x.r_);
    if (x.r_ < y.r_) {
      std::uint32_t s = y.r_ - x.r_;
      return Dyadic((x.re_ << s) + y.re_, (x.im_ << s) + y.im_, y.r_);
    }
    std::uint32_t s = x.r_ - y.r_;
    return Dyadic(x.re_ + (y.re_ << s), x.im_ + (y.im_ << s), x.r_);
  }

  friend Dyadic operator-(const Dyadic& x, const Dyadic& y) { return x + (-y); }

  friend Dyadic operator*(const Dyadic& x, const Dyadic& y) {
    return Dyadic(x.re_ * y.re_ - x.im_ * y.im_, x.re_ * y.im_ + x.im_ * y.re_,
                  x.r_ + y.r_);
  }

  Dyadic& operator+=(const Dyadic& y) { return *this = *this + y; }
  Dyadic& operator-=(const Dyadic& y) { return *this = *this - y; }
  Dyadic& operator*=(const Dyadic& y) { return *this = *this * y; }

  /// Exact multiplication by 2^k (k may be negative).
  Dyadic times_two_pow(std::int64_t k) const {
    if (k >= 0) {
      std::int64_t drop = std::min<std::int64_t>(k, r_);
      return Dyadic(re_ << (k - drop), im_ << (k - drop),
                    r_ - static_cast<std::uint32_t>(drop), no_normalize{});
    }
    return Dyadic(re_, im_, r_ + static_cast<std::uint32_t>(-k));
  }

  friend bool operator==(const Dyadic& x, const Dyadic& y) {
    return x.r_ == y.r_ && x.re_ == y.re_ && x.im_ == y.im_;
  }
  friend bool operator!=(const Dyadic& x, const Dyadic& y) { return !(x == y); }

  /// Nearest complex<double>; exact when numerators and 2^r fit in the
  /// 53-bit mantissa.
  std::complex<double> to_complex() const {
    return {std::ldexp(to_double(re_), -static_cast<int>(r_)),
            std::ldexp(to_double(im_), -static_cast<int>(r_))};
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "(" << re_ << (im_ < 0 ? "" : "+") << im_ << "i)/2^" << r_;
    return os.str();
  }

 private:
  struct no_normalize {};
  Dyadic(Int re, Int im, std::uint32_t r, no_normalize)
      : re_(std::move(re)), im_(std::move(im)), r_(r) {}

  static double to_double(const Int& v) { return v.convert_to<double>(); }

  void normalize() {
    if (re_ == 0 && im_ == 0) {
      r_ = 0;
      return;
    }
    while (r_ > 0 && !bit_test(re_, 0) && !bit_test(im_, 0)) {
      re_ >>= 1;
      im_ >>= 1;
      --r_;
    }
  }

  Int re_, im_;
  std::uint32_t r_;
};

}  // namespace qrg
