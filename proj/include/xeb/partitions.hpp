#ifndef XEB_PARTITIONS_HPP
#define XEB_PARTITIONS_HPP

#include <string>
#include <utility>
#include <vector>

namespace xeb {

// Integer partition lambda = (lambda_1 >= lambda_2 >= ... >= 1), keying the
// output-probability moment E[prod_i p(x_i)^{lambda_i}].
struct IntegerPartition {
    std::vector<int> parts;

    IntegerPartition() = default;
    explicit IntegerPartition(std::vector<int> p);

    int t() const;  // sum of parts
    int blocks() const { return static_cast<int>(parts.size()); }

    // "3,2,1" or "3 2 1"; parts are sorted non-increasing.
    static IntegerPartition parse(const std::string& text);
};

// All partitions of t, in lexicographically decreasing order.
std::vector<IntegerPartition> partitions_of(int t);

// Perfect matching of {0, ..., 2t-1} in canonical form: each pair (a, b) has
// a < b and pairs are sorted by their first element.
struct PairPartition {
    std::vector<std::pair<int, int>> pairs;
};

// All (2t)!/(2^t t!) matchings, canonical order, no duplicates. 1 <= t <= 8.
std::vector<PairPartition> enumerate_pair_partitions(int t);

}  // namespace xeb

#endif
