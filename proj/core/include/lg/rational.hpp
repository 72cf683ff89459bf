#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace lg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(int n, int k);
BigInt factorial(int n);

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline long double to_long_double(const Rational& x) { return x.convert_to<long double>(); }

}  // namespace lg
