#include "xeb/moments.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace xeb {

std::string to_string(Group g) { return g == Group::Unitary ? "unitary" : "orthogonal"; }

Group group_from_string(const std::string& s) {
    if (s == "unitary") return Group::Unitary;
    if (s == "orthogonal") return Group::Orthogonal;
    throw std::invalid_argument("unknown group '" + s + "'");
}

namespace {

void check_dim(long d) {
    if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
}

Rational haar_moment(const IntegerPartition& lambda, long d, Group group) {
    if (lambda.parts.empty()) throw std::invalid_argument("empty partition");
    check_dim(d);
    const int t = lambda.t();
    BigInt num = 1;
    for (int part : lambda.parts)
        num *= group == Group::Unitary ? factorial(part) : odd_double_factorial(part);
    const BigInt den = rising(BigInt(d), t, group == Group::Unitary ? 1 : 2);
    return Rational(num, den);
}

}  // namespace

Rational haar_unitary_moment(const IntegerPartition& lambda, long d) {
    return haar_moment(lambda, d, Group::Unitary);
}

Rational haar_orthogonal_moment(const IntegerPartition& lambda, long d) {
    return haar_moment(lambda, d, Group::Orthogonal);
}

Rational orthogonal_moment_oracle(const IntegerPartition& lambda, long d) {
    if (lambda.parts.empty()) throw std::invalid_argument("empty partition");
    check_dim(d);
    const int t = lambda.t();
    if (t > 6) throw std::invalid_argument("oracle limited to t <= 6 ((2t-1)!! matchings)");

    // Tensor slot j < t holds bit-string block block_of[j]; slot t + j is its
    // bra-side copy. A matching contributes trace 1 iff every pair joins two
    // slots holding the same (distinct-by-assumption) bit string.
    std::vector<int> block_of(static_cast<std::size_t>(t));
    int slot = 0;
    for (std::size_t b = 0; b < lambda.parts.size(); ++b)
        for (int r = 0; r < lambda.parts[b]; ++r) block_of[static_cast<std::size_t>(slot++)] = static_cast<int>(b);

    BigInt contributing = 0;
    for (const PairPartition& sigma : enumerate_pair_partitions(t)) {
        bool ok = true;
        for (const auto& [a, b] : sigma.pairs) {
            const int ba = block_of[static_cast<std::size_t>(a % t)];
            const int bb = block_of[static_cast<std::size_t>(b % t)];
            if (ba != bb) {
                ok = false;
                break;
            }
        }
        if (ok) ++contributing;
    }
    return Rational(contributing, rising(BigInt(d), t, 2));
}

Rational collision_mean(long d, Group group) {
    check_dim(d);
    return group == Group::Unitary ? Rational(BigInt(2), BigInt(d) + 1)
                                   : Rational(BigInt(3), BigInt(d) + 2);
}

Rational collision_variance(long d, Group group) {
    check_dim(d);
    const BigInt dd(d);
    if (group == Group::Unitary)
        return Rational(4 * (dd - 1), (dd + 1) * (dd + 1) * (dd + 2) * (dd + 3));
    return Rational(24 * (dd - 1), (dd + 2) * (dd + 2) * (dd + 4) * (dd + 6));
}

Rational sample_variance_mean(long d, Group group) {
    check_dim(d);
    const BigInt dd(d);
    if (group == Group::Unitary)
        return Rational(2 * (dd - 1), (dd + 1) * (dd + 2) * (dd + 3));
    return Rational(6 * (dd - 1), (dd + 2) * (dd + 4) * (dd + 6));
}

Rational collision_sum(const std::vector<int>& exponents, long d, Group group) {
    if (exponents.empty()) throw std::invalid_argument("collision_sum needs exponents");
    for (int e : exponents)
        if (e < 1) throw std::invalid_argument("exponents must be >= 1");
    check_dim(d);

    const int m = static_cast<int>(exponents.size());
    Rational total = 0;
    // Enumerate set partitions of the m index positions via restricted growth
    // strings; merged positions add exponents, and a partition into B blocks
    // corresponds to d(d-1)...(d-B+1) assignments of distinct bit strings.
    std::vector<int> assign(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int pos, int blocks) {
        if (pos == m) {
            std::vector<int> merged(static_cast<std::size_t>(blocks), 0);
            for (int i = 0; i < m; ++i)
                merged[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])] +=
                    exponents[static_cast<std::size_t>(i)];
            BigInt count = 1;
            for (int b = 0; b < blocks; ++b) count *= BigInt(d) - b;
            if (count == 0) return;
            total += Rational(count) * haar_moment(IntegerPartition(merged), d, group);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            assign[static_cast<std::size_t>(pos)] = b;
            rec(pos + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
    return total;
}

Rational sum_p3p3(long d, Group group) {
    check_dim(d);
    if (group == Group::Unitary) {
        const BigInt dd(d);
        return Rational(36 * (dd + 19), rising(dd + 1, 5));
    }
    return collision_sum({3, 3}, d, Group::Orthogonal);
}

Rational sum_p3p2p2(long d, Group group) {
    check_dim(d);
    if (group == Group::Unitary) {
        const BigInt dd(d);
        return Rational(24 * (dd * dd + 23 * dd + 186), rising(dd + 1, 6));
    }
    return collision_sum({3, 2, 2}, d, Group::Orthogonal);
}

Rational sum_p2p2p2p2(long d, Group group) {
    check_dim(d);
    if (group == Group::Unitary) {
        const BigInt dd(d);
        return Rational(16 * (dd * dd * dd + 30 * dd * dd + 371 * dd + 2118), rising(dd + 1, 7));
    }
    return collision_sum({2, 2, 2, 2}, d, Group::Orthogonal);
}

Rational variance_of_variance(long d, Group group) {
    check_dim(d);
    const BigInt dd(d);
    if (group == Group::Unitary) {
        const BigInt poly = ((((BigInt(17) * dd + 42) * dd - 106) * dd - 72) * dd + 449) * dd - 330;
        const BigInt den = (dd + 1) * (dd + 1) * (dd + 2) * (dd + 2) * (dd + 3) * (dd + 3) *
                           (dd + 4) * (dd + 5) * (dd + 6) * (dd + 7);
        return Rational(8 * poly, den);
    }
    const BigInt poly =
        ((((BigInt(37) * dd + 277) * dd - 198) * dd - 1852) * dd + 8360) * dd - 6624;
    const BigInt den = (dd + 2) * (dd + 2) * (dd + 4) * (dd + 4) * (dd + 6) * (dd + 6) * (dd + 8) *
                       (dd + 10) * (dd + 12) * (dd + 14);
    return Rational(72 * poly, den);
}

QMomentStats qmoment_sum_stats(long d, int q) {
    check_dim(d);
    if (q < 2) throw std::invalid_argument("q must be >= 2");
    QMomentStats stats;
    stats.mean = collision_sum({q}, d, Group::Unitary);
    stats.variance = collision_sum({q, q}, d, Group::Unitary) - stats.mean * stats.mean;
    stats.variance_bound =
        Rational(factorial(2 * q), boost::multiprecision::pow(BigInt(d), unsigned(2 * q - 1)));
    return stats;
}

RationalInterval moment_with_design_error(const IntegerPartition& lambda, long d,
                                          const Rational& epsilon, Group group) {
    if (epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
    const Rational value = haar_moment(lambda, d, group);
    return RationalInterval{value - epsilon, value + epsilon};
}

}  // namespace xeb
