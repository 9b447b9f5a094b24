#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qclique {

// Exact rational arithmetic on int64 numerator/denominator with 128-bit
// intermediates. Enough headroom for probabilities with denominators up to
// pair-count * 2^(2*24).
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) : n_(num), d_(den) { normalize(); }

    std::int64_t num() const { return n_; }
    std::int64_t den() const { return d_; }

    static Rational from_int128(__int128 num, __int128 den) {
        if (den == 0) throw std::domain_error("rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
            throw std::overflow_error("rational: value out of range");
        Rational r;
        r.n_ = static_cast<std::int64_t>(num);
        r.d_ = static_cast<std::int64_t>(den);
        return r;
    }

    Rational operator+(const Rational& o) const {
        return from_int128(static_cast<__int128>(n_) * o.d_ + static_cast<__int128>(o.n_) * d_,
                           static_cast<__int128>(d_) * o.d_);
    }
    Rational operator-(const Rational& o) const {
        return from_int128(static_cast<__int128>(n_) * o.d_ - static_cast<__int128>(o.n_) * d_,
                           static_cast<__int128>(d_) * o.d_);
    }
    Rational operator*(const Rational& o) const {
        return from_int128(static_cast<__int128>(n_) * o.n_, static_cast<__int128>(d_) * o.d_);
    }
    Rational operator/(const Rational& o) const {
        return from_int128(static_cast<__int128>(n_) * o.d_, static_cast<__int128>(d_) * o.n_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    bool operator==(const Rational& o) const { return n_ == o.n_ && d_ == o.d_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(n_) * o.d_ < static_cast<__int128>(o.n_) * d_;
    }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }
    bool is_zero() const { return n_ == 0; }

    std::string str() const {
        return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (d_ == 0) throw std::domain_error("rational: zero denominator");
        if (d_ < 0) {
            n_ = -n_;
            d_ = -d_;
        }
        std::int64_t g = std::gcd(n_ < 0 ? -n_ : n_, d_);
        if (g > 1) {
            n_ /= g;
            d_ /= g;
        }
    }

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
};

}  // namespace qclique
