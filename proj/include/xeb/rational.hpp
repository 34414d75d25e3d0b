#ifndef XEB_RATIONAL_HPP
#define XEB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace xeb {

// Every closed-form moment and variance in the workbench is evaluated in
// arbitrary-precision rationals; the formulas mix factorials up to (2q)! with
// d = 2^n, which floats would silently truncate.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(int m);

// (2t-1)!! = (2t)!/(2^t t!) = number of perfect matchings on 2t elements.
BigInt odd_double_factorial(int t);

// prod_{i=0}^{count-1} (base + i*step)
BigInt rising(const BigInt& base, int count, int step = 1);

double to_double(const Rational& r);

// "num/den"; integers print without the denominator.
std::string rational_string(const Rational& r);

}  // namespace xeb

#endif
