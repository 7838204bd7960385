#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cvn {

/// Exact rational number. Every metric quantity in the library is one of these.
using Rational = mpq_class;

/// Parses "p/q", "p" or a finite decimal such as "0.25" or "1e-9".
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// The rational with least denominator in [lo, hi] (lo <= hi).
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace cvn
