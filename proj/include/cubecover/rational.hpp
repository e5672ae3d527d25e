#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cubecover {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always kept canonical: denominator > 0,
/// gcd(|num|, den) = 1, and zero is stored as 0/1.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}
    Rat(BigInt v) : num_(std::move(v)), den_(1) {}

    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
        canonicalize();
    }
    Rat(long long n, long long d) : Rat(BigInt(n), BigInt(d)) {}

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_.sign(); }

    friend Rat operator-(const Rat& a) {
        Rat r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rat& operator+=(const Rat& b) { return *this = *this + b; }
    Rat& operator-=(const Rat& b) { return *this = *this - b; }
    Rat& operator*=(const Rat& b) { return *this = *this * b; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    // Canonical form makes equality a field comparison.
    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

    friend bool operator<(const Rat& a, const Rat& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    /// Canonical text form: "p/q" with q > 1, or a bare integer.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

    /// Parses "p/q" or a bare integer, optional leading '-'. The result is
    /// canonicalized, so "4/6" is accepted and yields 2/3.
    static Rat parse(std::string_view text) {
        auto bad = [&] {
            throw std::invalid_argument("Rat: cannot parse '" + std::string(text) + "'");
        };
        if (text.empty()) bad();
        std::size_t slash = text.find('/');
        std::string_view num_part = text.substr(0, slash);
        if (!is_integer_text(num_part)) bad();
        BigInt n{std::string(num_part)};
        if (slash == std::string_view::npos) return Rat(std::move(n));
        std::string_view den_part = text.substr(slash + 1);
        if (!is_integer_text(den_part) || den_part.front() == '-') bad();
        BigInt d{std::string(den_part)};
        if (d.is_zero()) bad();
        return Rat(std::move(n), std::move(d));
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        return os << r.str();
    }

private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static bool is_integer_text(std::string_view s) {
        if (!s.empty() && s.front() == '-') s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    }

    BigInt num_;
    BigInt den_;  // > 0
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

/// Nearest integer, ties rounded up. Used by the SVG emitter, which is the
/// only place exact values are ever rounded.
inline BigInt round_nearest(const Rat& r) {
    BigInt two_num = 2 * r.num() + r.den();
    BigInt q = two_num / (2 * r.den());
    if (two_num < 0 && two_num % (2 * r.den()) != 0) --q;  // floor for negatives
    return q;
}

}  // namespace cubecover
