#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>

#include "symdyn/errors.hpp"

namespace symdyn {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational with arbitrary-precision components, always normalized:
// gcd(num, den) = 1 and den > 0. Orbit denominators under piecewise-linear
// maps grow past any fixed-width integer, hence cpp_int.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
    Rat(BigInt n) : num_(std::move(n)), den_(1) {}
    Rat(BigInt n, BigInt d);

    static Rat parse(const std::string& text);  // "p/q" or "p"

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        BigInt lhs = a.num_ * b.den_;
        BigInt rhs = b.num_ * a.den_;
        return lhs < rhs ? std::strong_ordering::less
             : lhs > rhs ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
    }

    std::string str() const;  // "p/q", or "p" when integral
    double to_double() const;

  private:
    void normalize();

    BigInt num_;
    BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace symdyn
