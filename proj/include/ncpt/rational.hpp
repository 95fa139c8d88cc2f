#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic on 64-bit integers.
 *
 * Always reduced to lowest terms, denominator positive, zero stored as 0/1.
 * All phase and cocycle bookkeeping in this library runs on these; nothing
 * downstream is allowed to compare holonomies through floats.
 */

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <cmath>

namespace ncpt {

class Rat {
    long long num_ = 0;
    long long den_ = 1;

    void reduce() {
        if (den_ == 0) throw std::domain_error("Rat: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        num_ /= g;
        den_ /= g;
    }

public:
    constexpr Rat() = default;
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { reduce(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rat operator-() const { return Rat(-num_, den_); }

    Rat operator+(const Rat& r) const {
        long long g = std::gcd(den_, r.den_);
        return Rat(num_ * (r.den_ / g) + r.num_ * (den_ / g), (den_ / g) * r.den_);
    }
    Rat operator-(const Rat& r) const { return *this + (-r); }
    Rat operator*(const Rat& r) const {
        long long g1 = std::gcd(num_ < 0 ? -num_ : num_, r.den_);
        long long g2 = std::gcd(r.num_ < 0 ? -r.num_ : r.num_, den_);
        return Rat((num_ / g1) * (r.num_ / g2), (den_ / g2) * (r.den_ / g1));
    }
    Rat operator/(const Rat& r) const {
        if (r.num_ == 0) throw std::domain_error("Rat: division by zero");
        return *this * Rat(r.den_, r.num_);
    }

    Rat& operator+=(const Rat& r) { return *this = *this + r; }
    Rat& operator-=(const Rat& r) { return *this = *this - r; }
    Rat& operator*=(const Rat& r) { return *this = *this * r; }
    Rat& operator/=(const Rat& r) { return *this = *this / r; }

    bool operator==(const Rat& r) const { return num_ == r.num_ && den_ == r.den_; }
    bool operator!=(const Rat& r) const { return !(*this == r); }
    bool operator<(const Rat& r) const { return num_ * r.den_ < r.num_ * den_; }
    bool operator>(const Rat& r) const { return r < *this; }
    bool operator<=(const Rat& r) const { return !(r < *this); }
    bool operator>=(const Rat& r) const { return !(*this < r); }

    // Largest integer <= this.
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
};

inline Rat abs(const Rat& r) { return r.num() < 0 ? -r : r; }

} // namespace ncpt
