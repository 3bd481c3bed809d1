#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace hodgewalk {

__extension__ using int128 = __int128;

/// Exact rational number with 64-bit numerator/denominator, always in lowest terms.
/// Intermediate products are formed in 128 bits; overflow of the reduced result throws.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    explicit operator double() const noexcept
    {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        return from_wide(static_cast<int128>(a.num_) * b.den_ + static_cast<int128>(b.num_) * a.den_,
                         static_cast<int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        return from_wide(static_cast<int128>(a.num_) * b.num_, static_cast<int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_wide(static_cast<int128>(a.num_) * b.den_, static_cast<int128>(a.den_) * b.num_);
    }
    friend Rational operator-(const Rational& a)
    {
        Rational r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend bool operator<(const Rational& a, const Rational& b)
    {
        return static_cast<int128>(a.num_) * b.den_ < static_cast<int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r)
    {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    void assign(std::int64_t n, std::int64_t d)
    {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const std::int64_t g = std::gcd(n, d);
        num_ = g ? n / g : 0;
        den_ = g ? d / g : 1;
    }

    static Rational from_wide(int128 n, int128 d)
    {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        int128 a = n < 0 ? -n : n;
        int128 b = d;
        while (b != 0) {
            const int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        if (n == 0) d = 1;
        constexpr int128 lim = INT64_MAX;
        if (n > lim || -n > lim || d > lim) throw std::overflow_error("Rational: 64-bit overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace hodgewalk
