#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace stratglue {

using Rational = mpq_class;

/// Exact complex number with rational real and imaginary parts.
struct Complex {
    Rational re;
    Rational im;

    Complex() = default;
    Complex(Rational r) : re(std::move(r)) {}
    Complex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    /// |z|^2, always rational.
    Rational norm2() const { return re * re + im * im; }
    Complex conj() const { return {re, -im}; }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b);

    Complex& operator+=(const Complex& o) { return *this = *this + o; }
    Complex& operator-=(const Complex& o) { return *this = *this - o; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

/// Parses "3", "-7/2", "0.0625", "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Parses "re,im" (or a single real "re") into an exact complex number.
Complex parse_complex(std::string_view text);

/// Exact decimal when the denominator has only factors 2 and 5, otherwise "p/q".
std::string format_rational(const Rational& q);

/// "a+bi" / "a-bi" using format_rational for both parts.
std::string format_complex(const Complex& z);

/// Canonical "p/q" (or "p") text, used in JSON to keep values exact.
std::string rational_text(const Rational& q);

Rational abs(const Rational& q);

} // namespace stratglue
