#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace linstrand {

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        if (r > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
        r = r * num / static_cast<std::uint64_t>(i);
    }
    return r;
}

/// Visits the k-subsets of {0..n-1} in lexicographic order.  The visitor
/// returns false to stop early; the function returns false iff stopped.
template <class Visitor> bool for_each_combination(int n, int k, Visitor&& visit) {
    if (k < 0 || k > n) return true;
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (!visit(static_cast<const std::vector<int>&>(c))) return false;
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
}

/// All k-subsets of {0..n-1}, lexicographic.
inline std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    for_each_combination(n, k, [&](const std::vector<int>& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

}  // namespace linstrand
