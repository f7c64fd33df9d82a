#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace msbrst
{

// Exact rational. mpq_class keeps gcd(|num|, den) = 1 and den > 0 after every arithmetic op.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1)
{
    if (den == 0) {
        throw std::domain_error("zero denominator");
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "a" or "a/b" with optional sign.
inline Rat parse_rat(std::string_view text)
{
    Rat r;
    if (text.empty() || r.set_str(std::string(text), 10) != 0) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    if (r.get_den() == 0) {
        throw std::domain_error("zero denominator in '" + std::string(text) + "'");
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat &r)
{
    return r.get_str();
}

inline bool is_zero(const Rat &r)
{
    return sgn(r) == 0;
}

inline bool is_one(const Rat &r)
{
    return r == 1;
}

inline Rat sign_rat(bool negative)
{
    return negative ? Rat(-1) : Rat(1);
}

// (-1)^e for a non-negative or negative integer exponent.
constexpr int parity_sign(long e)
{
    return (e % 2 == 0) ? 1 : -1;
}

} // namespace msbrst
