#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "cmcat/error.hpp"

namespace cmcat {

using Int = long long;

namespace detail {

inline Int narrow128(__int128 v, const char* what) {
    if (v > static_cast<__int128>(std::numeric_limits<Int>::max()) ||
        v < static_cast<__int128>(std::numeric_limits<Int>::min()))
        throw InternalError(std::string("integer overflow in ") + what);
    return static_cast<Int>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace detail

// Exact rational on checked 64-bit words; intermediates take 128 bits and
// are reduced before narrowing.  Always normalized: den > 0, gcd = 1.
struct Rat {
    Int num = 0;
    Int den = 1;

    Rat() = default;
    Rat(Int n) : num(n) {}
    Rat(Int n, Int d) { *this = make(n, d); }

    static Rat make(__int128 n, __int128 d) {
        if (d == 0) throw InternalError("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = detail::gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        Rat r;
        r.num = detail::narrow128(n, "rational numerator");
        r.den = detail::narrow128(d, "rational denominator");
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(static_cast<__int128>(a.num) * b.den +
                        static_cast<__int128>(b.num) * a.den,
                    static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make(static_cast<__int128>(a.num) * b.den -
                        static_cast<__int128>(b.num) * a.den,
                    static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(static_cast<__int128>(a.num) * b.num,
                    static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw InternalError("rational division by zero");
        return make(static_cast<__int128>(a.num) * b.den,
                    static_cast<__int128>(a.den) * b.num);
    }
    Rat operator-() const {
        Rat r;
        r.num = -num;
        r.den = den;
        return r;
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num) * b.den <
               static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        return os << r.str();
    }
};

inline Rat inverse(const Rat& a) { return Rat(1) / a; }

// Prime field used to speed up bulk Hom-dimension scans; p = 32003.
// Rational arithmetic stays the default; every use of Fp is cross-checked.
struct Fp {
    static constexpr uint32_t P = 32003;
    uint32_t v = 0;

    Fp() = default;
    Fp(Int n) {
        Int m = n % static_cast<Int>(P);
        if (m < 0) m += P;
        v = static_cast<uint32_t>(m);
    }

    friend Fp operator+(Fp a, Fp b) {
        Fp r;
        r.v = a.v + b.v;
        if (r.v >= P) r.v -= P;
        return r;
    }
    friend Fp operator-(Fp a, Fp b) {
        Fp r;
        r.v = a.v + P - b.v;
        if (r.v >= P) r.v -= P;
        return r;
    }
    friend Fp operator*(Fp a, Fp b) {
        Fp r;
        r.v = static_cast<uint32_t>(static_cast<uint64_t>(a.v) * b.v % P);
        return r;
    }
    friend Fp inverse(Fp a) {
        if (a.v == 0) throw InternalError("inverse of zero in prime field");
        uint64_t base = a.v, acc = 1;
        uint32_t e = P - 2;
        while (e) {
            if (e & 1) acc = acc * base % P;
            base = base * base % P;
            e >>= 1;
        }
        Fp r;
        r.v = static_cast<uint32_t>(acc);
        return r;
    }
    friend Fp operator/(Fp a, Fp b) { return a * inverse(b); }
    Fp operator-() const {
        Fp r;
        r.v = v ? P - v : 0;
        return r;
    }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }

    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
    bool is_zero() const { return v == 0; }
};

}  // namespace cmcat
