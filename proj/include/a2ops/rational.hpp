#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

#include "a2ops/errors.hpp"

namespace a2ops {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. Invariants (maintained by the backing type):
// denominator > 0, gcd(numerator, denominator) = 1, zero is 0/1.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}  // NOLINT: implicit by design, mirrors int literals
    Rational(const BigInt& n, const BigInt& d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        v_ = boost::multiprecision::cpp_rational(n);
        v_ /= boost::multiprecision::cpp_rational(d);
    }
    static Rational of(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

    // Parses "n", "-n", or "n/d" with optional sign on the numerator.
    static Rational parse(const std::string& text);

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return den() == 1; }

    double to_double() const { return v_.convert_to<double>(); }

    std::string str() const {
        if (is_integer()) return num().str();
        return num().str() + "/" + den().str();
    }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DomainError("rational division by zero");
        return Rational(a.v_ / b.v_);
    }
    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  private:
    explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
    boost::multiprecision::cpp_rational v_;
};

// Binomial coefficient as an exact rational (exact integer value).
Rational binomial(unsigned n, unsigned k);

}  // namespace a2ops
