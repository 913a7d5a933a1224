#pragma once

#include <cstdint>
#include <vector>

namespace gmlab {

// Calls fn(subset) for every k-subset of `items`, in lexicographic position order.
template <class F>
void for_each_k_subset(const std::vector<int>& items, int k, F&& fn) {
    const int n = static_cast<int>(items.size());
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::vector<int> subset(k);
    for (;;) {
        for (int i = 0; i < k; ++i) subset[i] = items[idx[i]];
        fn(static_cast<const std::vector<int>&>(subset));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Calls fn(subset) for every subset of `items` (bitmask order).
template <class F>
void for_each_subset(const std::vector<int>& items, F&& fn) {
    const int n = static_cast<int>(items.size());
    std::vector<int> subset;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        subset.clear();
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) subset.push_back(items[i]);
        fn(static_cast<const std::vector<int>&>(subset));
    }
}

inline std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (int x : a) {
        bool found = false;
        for (int y : b) found = found || (x == y);
        if (!found) out.push_back(x);
    }
    return out;
}

}  // namespace gmlab
