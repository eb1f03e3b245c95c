#include "stratglue/number.hpp"

#include "stratglue/error.hpp"

#include <algorithm>
#include <cctype>

namespace stratglue {

Complex operator/(const Complex& a, const Complex& b)
{
    const Rational d = b.norm2();
    if (sgn(d) == 0) {
        throw DomainError("division by zero complex number");
    }
    const Complex num = a * b.conj();
    return {num.re / d, num.im / d};
}

namespace {

std::string trim(std::string_view s)
{
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool all_digits(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Rational pow10(long e)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string s = trim(text);
    if (s.empty()) {
        throw DomainError("empty number");
    }
    bool negative = false;
    std::string body = s;
    if (body[0] == '+' || body[0] == '-') {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    Rational value;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        const std::string num = body.substr(0, slash);
        const std::string den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw DomainError("malformed rational '" + s + "'");
        }
        mpz_class d(den, 10);
        if (d == 0) {
            throw DomainError("zero denominator in '" + s + "'");
        }
        value = Rational(mpz_class(num, 10), d);
    } else {
        long exponent = 0;
        std::string mantissa = body;
        if (auto e = body.find_first_of("eE"); e != std::string::npos) {
            mantissa = body.substr(0, e);
            std::string exp = body.substr(e + 1);
            bool exp_neg = false;
            if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
                exp_neg = exp[0] == '-';
                exp = exp.substr(1);
            }
            if (!all_digits(exp) || exp.size() > 6) {
                throw DomainError("malformed exponent in '" + s + "'");
            }
            exponent = std::stol(exp) * (exp_neg ? -1 : 1);
        }
        std::string int_part = mantissa;
        std::string frac_part;
        if (auto dot = mantissa.find('.'); dot != std::string::npos) {
            int_part = mantissa.substr(0, dot);
            frac_part = mantissa.substr(dot + 1);
        }
        if (int_part.empty() && frac_part.empty()) {
            throw DomainError("malformed number '" + s + "'");
        }
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
            throw DomainError("malformed number '" + s + "'");
        }
        const std::string digits = (int_part.empty() ? "0" : int_part) + frac_part;
        value = Rational(mpz_class(digits, 10)) * pow10(exponent - static_cast<long>(frac_part.size()));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

Complex parse_complex(std::string_view text)
{
    const std::string s = trim(text);
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
        return Complex(parse_rational(s));
    }
    return Complex(parse_rational(std::string_view(s).substr(0, comma)),
                   parse_rational(std::string_view(s).substr(comma + 1)));
}

std::string format_rational(const Rational& raw)
{
    Rational q = raw;
    q.canonicalize();
    mpz_class den = q.get_den();
    int twos = 0;
    int fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
        den /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
        den /= 5;
        ++fives;
    }
    if (den != 1) {
        return q.get_str();
    }
    const int places = std::max(twos, fives);
    Rational exact = q * pow10(places);
    exact.canonicalize();
    mpz_class scaled = exact.get_num();
    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits = scaled.get_str();
    if (places > 0) {
        if (static_cast<int>(digits.size()) <= places) {
            digits = std::string(places - digits.size() + 1, '0') + digits;
        }
        digits.insert(digits.size() - places, ".");
    }
    return (negative ? "-" : "") + digits;
}

std::string format_complex(const Complex& z)
{
    std::string out = format_rational(z.re);
    if (sgn(z.im) < 0) {
        out += "-" + format_rational(-z.im) + "i";
    } else {
        out += "+" + format_rational(z.im) + "i";
    }
    return out;
}

std::string rational_text(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Rational abs(const Rational& q)
{
    return sgn(q) < 0 ? Rational(-q) : q;
}

} // namespace stratglue
