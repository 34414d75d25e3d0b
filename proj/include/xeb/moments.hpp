#ifndef XEB_MOMENTS_HPP
#define XEB_MOMENTS_HPP

#include "xeb/partitions.hpp"
#include "xeb/rational.hpp"

namespace xeb {

enum class Group { Unitary, Orthogonal };

std::string to_string(Group g);
Group group_from_string(const std::string& s);

// E[prod_i p(x_i)^{lambda_i}] over Haar unitaries, distinct x_i:
//   prod_i (lambda_i)! / prod_{i=0}^{t-1} (d + i)
Rational haar_unitary_moment(const IntegerPartition& lambda, long d);

// Haar orthogonal counterpart:
//   prod_i (2 lambda_i)!/(2^{lambda_i} lambda_i!) / prod_{i=0}^{t-1} (d + 2i)
Rational haar_orthogonal_moment(const IntegerPartition& lambda, long d);

// Independent combinatorial route to the orthogonal moment: enumerate all
// perfect matchings of the 2t tensor slots and count those whose pairs stay
// within a single bit-string block (the trace of Pi_sigma against a product of
// distinct basis states is 1 exactly in that case, else 0). t <= 6.
Rational orthogonal_moment_oracle(const IntegerPartition& lambda, long d);

// E_x[p(x)] averaged over the group: 2/(d+1) unitary, 3/(d+2) orthogonal.
Rational collision_mean(long d, Group group);

// Variance of the collision probability over the group:
//   unitary    4(d-1) / ((d+1)^2 (d+2)(d+3))
//   orthogonal 24(d-1) / ((d+2)^2 (d+4)(d+6))
Rational collision_variance(long d, Group group);

// E over the group of Var_{x~p}(p(x)):
//   unitary    2(d-1) / ((d+1)(d+2)(d+3))
//   orthogonal 6(d-1) / ((d+2)(d+4)(d+6))
Rational sample_variance_mean(long d, Group group);

// sum_{i_1..i_m in [d]^m} E[prod_j p(x_{i_j})^{e_j}]: expands the unrestricted
// sum over the set partitions of the index positions (merged positions add
// their exponents, each partition weighted by the falling factorial of d).
// This is the workhorse behind the variance identities and their oracles.
Rational collision_sum(const std::vector<int>& exponents, long d, Group group);

// The three intermediate sums in the variance-of-variance computation.
// Unitary values are the printed closed forms; orthogonal values come from
// the set-partition expansion above.
Rational sum_p3p3(long d, Group group);      // sum_{x,y} E[p^3 p^3]
Rational sum_p3p2p2(long d, Group group);    // sum_{x,y,z} E[p^3 p^2 p^2]
Rational sum_p2p2p2p2(long d, Group group);  // sum_{w,x,y,z} E[p^2 p^2 p^2 p^2]

// Var over the group of Var_{x~p}(p(x)), exact closed form:
//   unitary    8(17d^5+42d^4-106d^3-72d^2+449d-330)
//              / ((d+1)^2 (d+2)^2 (d+3)^2 (d+4)(d+5)(d+6)(d+7))
//   orthogonal 72(37d^5+277d^4-198d^3-1852d^2+8360d-6624)
//              / ((d+2)^2 (d+4)^2 (d+6)^2 (d+8)(d+10)(d+12)(d+14))
Rational variance_of_variance(long d, Group group);

// Moments of the q-norm sum S_q = sum_x p(x)^q over Haar unitaries, q >= 2:
// exact mean and variance plus the coarse bound (2q)!/d^{2q-1} on the
// variance.
struct QMomentStats {
    Rational mean;
    Rational variance;
    Rational variance_bound;
};
QMomentStats qmoment_sum_stats(long d, int q);

// Additive design-error interval around the Haar value: [m - eps, m + eps].
struct RationalInterval {
    Rational lower;
    Rational upper;
};
RationalInterval moment_with_design_error(const IntegerPartition& lambda, long d,
                                          const Rational& epsilon,
                                          Group group = Group::Unitary);

}  // namespace xeb

#endif
