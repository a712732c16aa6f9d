#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace hodgeft {

/// Exact rational number, always in lowest terms with positive denominator.
/// Thin value wrapper over GMP's mpq_class; construction canonicalizes.
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) { canon(); }
    explicit Rat(const mpq_class& q) : v_(q) { canon(); }
    explicit Rat(const mpz_class& z) : v_(z) {}

    /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input
    /// or zero denominator.
    static Rat parse(const std::string& s);

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    /// Canonical text form: "p" if q==1, else "p/q".
    std::string str() const { return v_.get_str(); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

  private:
    void canon() { v_.canonicalize(); }
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// n! as an exact integer-valued rational.
Rat factorial(int n);

/// (2n+1)!! for n >= -1; (-1)!! = 1.
Rat double_factorial_odd(int n);

} // namespace hodgeft
