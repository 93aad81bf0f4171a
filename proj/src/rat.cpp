#include "symdyn/rat.hpp"

#include <ostream>

namespace symdyn {

Rat::Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) {
        throw DomainError("rational with zero denominator");
    }
    normalize();
}

void Rat::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rat Rat::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(BigInt(text));
        }
        return Rat(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw DomainError("cannot parse rational: '" + text + "'");
    }
}

Rat Rat::operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rat& Rat::operator+=(const Rat& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rat& Rat::operator-=(const Rat& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rat& Rat::operator*=(const Rat& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.num_ == 0) {
        throw DomainError("rational division by zero");
    }
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

std::string Rat::str() const {
    if (den_ == 1) {
        return num_.str();
    }
    return num_.str() + "/" + den_.str();
}

double Rat::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

}  // namespace symdyn
