#include "xeb/partitions.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace xeb {

IntegerPartition::IntegerPartition(std::vector<int> p) : parts(std::move(p)) {
    if (parts.empty()) throw std::invalid_argument("empty partition");
    for (int v : parts)
        if (v < 1) throw std::invalid_argument("partition parts must be >= 1");
    std::sort(parts.begin(), parts.end(), std::greater<int>());
}

int IntegerPartition::t() const {
    int sum = 0;
    for (int v : parts) sum += v;
    return sum;
}

IntegerPartition IntegerPartition::parse(const std::string& text) {
    std::vector<int> parts;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        std::size_t used = 0;
        int v = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument("bad partition part '" + token + "'");
        parts.push_back(v);
        token.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ' ')
            flush();
        else
            token.push_back(c);
    }
    flush();
    return IntegerPartition(std::move(parts));
}

std::vector<IntegerPartition> partitions_of(int t) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    std::vector<IntegerPartition> out;
    std::vector<int> current;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            IntegerPartition p;
            p.parts = current;  // already non-increasing by construction
            out.push_back(std::move(p));
            return;
        }
        for (int next = std::min(remaining, max_part); next >= 1; --next) {
            current.push_back(next);
            rec(remaining - next, next);
            current.pop_back();
        }
    };
    rec(t, t);
    return out;
}

std::vector<PairPartition> enumerate_pair_partitions(int t) {
    if (t < 1 || t > 8) throw std::invalid_argument("pair partitions supported for 1 <= t <= 8");
    std::vector<PairPartition> out;
    std::vector<bool> used(static_cast<std::size_t>(2 * t), false);
    std::vector<std::pair<int, int>> current;
    // Pair the smallest unused element with every larger unused partner; this
    // yields each matching exactly once, in canonical order.
    std::function<void()> rec = [&] {
        int first = -1;
        for (int i = 0; i < 2 * t; ++i)
            if (!used[i]) {
                first = i;
                break;
            }
        if (first < 0) {
            out.push_back(PairPartition{current});
            return;
        }
        used[first] = true;
        for (int second = first + 1; second < 2 * t; ++second) {
            if (used[second]) continue;
            used[second] = true;
            current.emplace_back(first, second);
            rec();
            current.pop_back();
            used[second] = false;
        }
        used[first] = false;
    };
    rec();
    return out;
}

}  // namespace xeb
