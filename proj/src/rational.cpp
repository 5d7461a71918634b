#include "lorenz/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "lorenz/errors.hpp"

namespace lorenz {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        s = s.substr(0, e);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6) {
            throw ParseError("malformed exponent in number: '" + std::string(text) + "'");
        }
        exponent = std::stol(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
    }

    std::string digits;
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        int_part = s.substr(0, dot);
        frac_part = s.substr(dot + 1);
    }
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
        throw ParseError("malformed number: '" + std::string(text) + "'");
    }
    digits.append(int_part);
    digits.append(frac_part);
    exponent -= static_cast<long>(frac_part.size());

    BigInt numerator(digits, 10);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational result = exponent >= 0 ? Rational(numerator * scale) : Rational(numerator, scale);
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty number");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(text.substr(0, slash));
        Rational den = parse_decimal(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
        return num / den;
    }
    return parse_decimal(text);
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) throw ParseError("non-finite value cannot be made exact");
    return Rational(value);
}

double to_double(const Rational& value) {
    // A quotient of two exactly representable doubles is correctly rounded;
    // get_d alone truncates.
    const auto bits = [](const BigInt& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); };
    if (bits(value.get_num()) <= 53 && bits(value.get_den()) <= 53) {
        return value.get_num().get_d() / value.get_den().get_d();
    }
    return value.get_d();
}

double log_bigint(const BigInt& value) {
    if (value <= 0) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    const double mantissa = mpz_get_d_2exp(&exp2, value.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exp2) * std::log(2.0);
}

double log_rational(const Rational& value) {
    if (value <= 0) return -std::numeric_limits<double>::infinity();
    const double direct = value.get_d();
    if (std::isnormal(direct) && direct < 1e300) return std::log(direct);
    return log_bigint(value.get_num()) - log_bigint(value.get_den());
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace lorenz
