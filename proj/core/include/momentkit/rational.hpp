#pragma once

#include <gmpxx.h>

#include <string>

namespace momentkit {

/// Exact rational number. GMP keeps results of arithmetic in canonical
/// form (reduced, positive denominator); make_rat canonicalizes literals.
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rat &r);

bool is_integer(const Rat &r);

} // namespace momentkit
