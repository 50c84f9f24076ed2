#ifndef COCYCLELAB_RAT_HPP
#define COCYCLELAB_RAT_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <functional>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

/// Exact rational number on 64-bit numerator/denominator.
///
/// All arithmetic goes through 128-bit intermediates and throws OverflowError
/// if a reduced result does not fit in int64.  Cochain values, Haar masses and
/// metric breakpoints in this project have denominators bounded by |G|^p times
/// the input data's denominators, which stays far below 2^63 at desk scale;
/// unbounded integer work (Smith normal form) uses multiprecision separately.
class Rat {
public:
    Rat() : n_(0), d_(1) {}
    Rat(long long n) : n_(n), d_(1) {}
    Rat(long long n, long long d) : n_(n), d_(d) { reduce(); }

    long long num() const { return n_; }
    long long den() const { return d_; }

    bool is_zero() const { return n_ == 0; }
    bool is_integer() const { return d_ == 1; }
    int sign() const { return n_ < 0 ? -1 : (n_ > 0 ? 1 : 0); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        __int128 n = (__int128)a.n_ * b.d_ + (__int128)b.n_ * a.d_;
        __int128 d = (__int128)a.d_ * b.d_;
        return from128(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        __int128 n = (__int128)a.n_ * b.d_ - (__int128)b.n_ * a.d_;
        __int128 d = (__int128)a.d_ * b.d_;
        return from128(n, d);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from128((__int128)a.n_ * b.n_, (__int128)a.d_ * b.d_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.n_ == 0) throw InternalError("rational division by zero");
        return from128((__int128)a.n_ * b.d_, (__int128)a.d_ * b.n_);
    }
    Rat operator-() const { Rat r; r.n_ = -n_; r.d_ = d_; return r; }
    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.n_ * b.d_ < (__int128)b.n_ * a.d_;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    Rat abs() const { return n_ < 0 ? -*this : *this; }

    /// Largest integer <= value.
    long long floor() const {
        long long q = n_ / d_;
        if (n_ % d_ != 0 && n_ < 0) --q;
        return q;
    }

    /// Fractional part in [0,1); used for torus reduction.
    Rat mod1() const { return *this - Rat(floor()); }

    std::string str() const {
        if (d_ == 1) return std::to_string(n_);
        return std::to_string(n_) + "/" + std::to_string(d_);
    }

    static Rat parse(const std::string& s);

private:
    static Rat from128(__int128 n, __int128 d) {
        if (d == 0) throw InternalError("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw OverflowError("rational out of 64-bit range");
        Rat r;
        r.n_ = (long long)n;
        r.d_ = (long long)d;
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }
    void reduce() { *this = from128(n_, d_); }

    long long n_, d_;
};

inline Rat Rat::parse(const std::string& s) {
    auto bad = [&] { throw ParseError("bad rational literal '" + s + "'"); };
    if (s.empty()) bad();
    size_t slash = s.find('/');
    try {
        size_t pos = 0;
        long long n = std::stoll(s.substr(0, slash), &pos);
        if (pos != (slash == std::string::npos ? s.size() : slash)) bad();
        long long d = 1;
        if (slash != std::string::npos) {
            d = std::stoll(s.substr(slash + 1), &pos);
            if (pos != s.size() - slash - 1) bad();
        }
        return Rat(n, d);
    } catch (const std::invalid_argument&) {
        bad();
    } catch (const std::out_of_range&) {
        bad();
    }
    return Rat();
}

} // namespace cocyclelab

template <>
struct std::hash<cocyclelab::Rat> {
    size_t operator()(const cocyclelab::Rat& r) const {
        return std::hash<long long>()(r.num()) * 1000003u ^ std::hash<long long>()(r.den());
    }
};

#endif
