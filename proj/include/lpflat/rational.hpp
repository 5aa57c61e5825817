#pragma once

#include <boost/multiprecision/gmp.hpp>

namespace lpflat {

/// Arbitrary precision rational. Constructing from a double is exact: every
/// finite double is a dyadic rational.
using Rational = boost::multiprecision::mpq_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace lpflat
