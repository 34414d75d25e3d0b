#ifndef XEB_BOUNDS_HPP
#define XEB_BOUNDS_HPP

#include <string>

namespace xeb {

// h(u) = (1+u) ln(1+u) - u, u >= 0 (natural logarithm).
double bennett_h(double u);

// Bennett tail for the mean of k iid variables with variance sigma2, upper
// bound alpha, deviation delta: exp(-(k sigma2/alpha^2) h(alpha delta/sigma2)).
double bennett_tail(double k, double sigma2, double alpha, double delta);

// 2 exp(-2 k delta^2 / (16 n^2)), the Hoeffding form used alongside Bennett.
double hoeffding_tail(double k, double delta, double n);

// Failure probability of the max-probability bound: min(1, 2/2^n).
double maxp_tail(int n);

// variance/delta^2 and mean/threshold, capped at 1.
double chebyshev_tail(double variance, double delta);
double markov_tail(double mean, double threshold);

enum class Theorem { LinDepth, EightDesign, PolyDepth, OrthogonalDesign };

std::string to_string(Theorem t);
Theorem theorem_from_string(const std::string& s);

enum class LogBase { Natural, Two };

// End-to-end LXEB acceptance-probability lower bound of the tagged theorem.
// A bound <= 0 carries no information and is flagged vacuous; the clamped
// value is reported alongside the raw one. The exponents of the poly-depth
// and orthogonal bounds are natural-log by default (the source never fixes a
// base); pass LogBase::Two for the alternate reading.
struct GuaranteeReport {
    Theorem theorem = Theorem::LinDepth;
    double k = 0.0;
    int n = 0;
    double bound_raw = 0.0;
    double bound = 0.0;  // clamped into [0, 1]
    bool vacuous = false;
    LogBase log_base = LogBase::Natural;
    std::string log_note;
};

GuaranteeReport guarantee(Theorem theorem, double k, int n,
                          LogBase log_base = LogBase::Natural);

}  // namespace xeb

#endif
