#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mcsm {

/// Exact rational number. Every size, weight and distance in the library is one.
using Rational = mpq_class;

/// Parses "p/q" or "n" (shorthand for "n/1"). The result is canonicalized.
/// Throws InputError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Lowest-terms "p/q" with q > 0, always including the denominator.
std::string to_string(const Rational& value);

}  // namespace mcsm
