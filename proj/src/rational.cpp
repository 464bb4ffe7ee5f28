#include "efx/rational.hpp"

#include "efx/errors.hpp"

#include <cctype>

namespace efx {

namespace {

// cpp_int's string constructor treats a leading '0' as an octal prefix; route all digit
// strings through here so "0025" means twenty-five.
Int digits_value(const std::string& digits) {
    std::size_t nz = digits.find_first_not_of('0');
    if (nz == std::string::npos) return Int(0);
    return Int(digits.substr(nz));
}

Int parse_int(const std::string& text) {
    if (text.empty()) throw parse_error("empty integer literal");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw parse_error("sign without digits in '" + text + "'");
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw parse_error("invalid integer literal '" + text + "'");
    Int value = digits_value(text.substr(start));
    return text[0] == '-' ? -value : value;
}

} // namespace

Rational parse_rational(const std::string& text) {
    if (auto slash = text.find('/'); slash != std::string::npos) {
        Int num = parse_int(text.substr(0, slash));
        Int den = parse_int(text.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator in '" + text + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string frac = text.substr(dot + 1);
        if (frac.empty()) throw parse_error("missing digits after decimal point in '" + text + "'");
        for (char c : frac)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw parse_error("invalid decimal literal '" + text + "'");
        std::string whole = text.substr(0, dot);
        bool negative = !whole.empty() && whole[0] == '-';
        Int integral = whole.empty() || whole == "-" || whole == "+" ? Int(0) : parse_int(whole);
        Int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Int num = abs(integral) * scale + digits_value(frac);
        return Rational(negative ? -num : num, scale);
    }
    return Rational(parse_int(text));
}

std::string rational_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_pow(const Rational& r, unsigned k) {
    Rational result = 1;
    Rational base = r;
    for (unsigned e = k; e > 0; e >>= 1) {
        if (e & 1) result *= base;
        base *= base;
    }
    return result;
}

Rational sqrt_lower_bound(const Rational& r, unsigned bits) {
    if (r < 0) throw input_error("sqrt_lower_bound of a negative rational");
    // floor(2^bits * sqrt(n/d)) = floor(sqrt(4^bits * n / d)) >= isqrt(floor(4^bits * n / d)).
    Int scaled = (numerator(r) << (2 * bits)) / denominator(r);
    return Rational(sqrt(scaled), Int(1) << bits);
}

} // namespace efx
