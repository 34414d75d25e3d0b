#include "xeb/rational.hpp"

#include <stdexcept>

namespace xeb {

BigInt factorial(int m) {
    if (m < 0) throw std::invalid_argument("factorial of negative integer");
    BigInt out = 1;
    for (int i = 2; i <= m; ++i) out *= i;
    return out;
}

BigInt odd_double_factorial(int t) {
    if (t < 0) throw std::invalid_argument("double factorial of negative integer");
    BigInt out = 1;
    for (int i = 1; i <= t; ++i) out *= 2 * i - 1;
    return out;
}

BigInt rising(const BigInt& base, int count, int step) {
    BigInt out = 1;
    for (int i = 0; i < count; ++i) out *= base + i * step;
    return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string rational_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace xeb
