#pragma once

#include <gmpxx.h>

#include <string>

#include "sullivan/errors.hpp"

namespace sullivan {

// Exact rational scalar. GMP keeps values canonical: lowest terms,
// positive denominator.
using Rational = mpq_class;
using BigInt = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Accepts "p" or "p/q" with optional leading '-'.
inline Rational parse_rational(const std::string& text) {
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw StructuralError("bad rational literal: '" + text + "'");
    if (sgn(mpq_class(q.get_den())) == 0)
        throw StructuralError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

} // namespace sullivan
