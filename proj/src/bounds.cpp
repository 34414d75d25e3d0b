#include "xeb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xeb {

double bennett_h(double u) {
    if (u < 0.0) throw std::invalid_argument("bennett_h requires u >= 0");
    return (1.0 + u) * std::log1p(u) - u;
}

double bennett_tail(double k, double sigma2, double alpha, double delta) {
    if (!(k > 0.0 && sigma2 > 0.0 && alpha > 0.0 && delta > 0.0))
        throw std::invalid_argument("bennett_tail requires positive inputs");
    return std::exp(-(k * sigma2 / (alpha * alpha)) * bennett_h(alpha * delta / sigma2));
}

double hoeffding_tail(double k, double delta, double n) {
    if (!(k > 0.0 && n > 0.0) || delta < 0.0)
        throw std::invalid_argument("hoeffding_tail requires k, n > 0 and delta >= 0");
    return 2.0 * std::exp(-2.0 * k * delta * delta / (16.0 * n * n));
}

double maxp_tail(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return std::min(1.0, std::ldexp(2.0, -n));
}

double chebyshev_tail(double variance, double delta) {
    if (!(variance >= 0.0 && delta > 0.0))
        throw std::invalid_argument("chebyshev_tail requires variance >= 0, delta > 0");
    return std::min(1.0, variance / (delta * delta));
}

double markov_tail(double mean, double threshold) {
    if (!(mean >= 0.0 && threshold > 0.0))
        throw std::invalid_argument("markov_tail requires mean >= 0, threshold > 0");
    return std::min(1.0, mean / threshold);
}

std::string to_string(Theorem t) {
    switch (t) {
        case Theorem::LinDepth: return "lindepth";
        case Theorem::EightDesign: return "8design";
        case Theorem::PolyDepth: return "polydepth";
        case Theorem::OrthogonalDesign: return "orthogonal";
    }
    return "?";
}

Theorem theorem_from_string(const std::string& s) {
    if (s == "lindepth") return Theorem::LinDepth;
    if (s == "8design") return Theorem::EightDesign;
    if (s == "polydepth") return Theorem::PolyDepth;
    if (s == "orthogonal") return Theorem::OrthogonalDesign;
    throw std::invalid_argument("unknown theorem tag '" + s + "'");
}

GuaranteeReport guarantee(Theorem theorem, double k, int n, LogBase log_base) {
    if (!(k >= 1.0)) throw std::invalid_argument("k must be >= 1");
    if (n < 1) throw std::invalid_argument("n must be >= 1");

    GuaranteeReport rep;
    rep.theorem = theorem;
    rep.k = k;
    rep.n = n;
    rep.log_base = log_base;

    const double inv_d = std::ldexp(1.0, -n);  // 1/2^n without overflow
    auto logf = [log_base](double x) {
        return log_base == LogBase::Natural ? std::log(x) : std::log2(x);
    };

    switch (theorem) {
        case Theorem::LinDepth:
            rep.bound_raw = 1.0 - 200.0 * std::sqrt(2.0) / std::sqrt(k) - 50000.0 * inv_d;
            break;
        case Theorem::EightDesign:
            rep.bound_raw = 1.0 - 400.0 / k - 210000.0 * inv_d;
            break;
        case Theorem::PolyDepth:
            rep.bound_raw =
                1.0 - std::exp(-(k / (800.0 * n)) * logf(n / 200.0)) - 50006.0 * inv_d;
            rep.log_note = log_base == LogBase::Natural
                               ? "exponent uses natural log; source leaves the base open"
                               : "exponent uses log base 2 (alternate reading)";
            break;
        case Theorem::OrthogonalDesign:
            rep.bound_raw = 1.0 - std::exp(-(k / (16.0 * n)) * logf(n / 6.0)) - 180.0 * inv_d;
            rep.log_note = log_base == LogBase::Natural
                               ? "exponent uses natural log; source leaves the base open"
                               : "exponent uses log base 2 (alternate reading)";
            break;
    }
    rep.vacuous = rep.bound_raw <= 0.0;
    rep.bound = std::clamp(rep.bound_raw, 0.0, 1.0);
    return rep;
}

}  // namespace xeb
