#pragma once

#include <functional>
#include <vector>

#include "toddsum/rational.hpp"

namespace toddsum {

using MultiIndex = std::vector<int>;

inline int weight(const MultiIndex& m) {
    int s = 0;
    for (int x : m) s += x;
    return s;
}

inline Int factorial_of(const MultiIndex& m) {
    Int acc = 1;
    for (int x : m) acc *= factorial_int(static_cast<unsigned>(x));
    return acc;
}

/// Calls fn on every n-tuple of non-negative integers with |m| = total.
inline void for_each_multiindex(int total, int n, const std::function<void(const MultiIndex&)>& fn) {
    MultiIndex m(static_cast<size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            m[pos] = left;
            fn(m);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            m[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    if (n == 0) {
        if (total == 0) fn(m);
        return;
    }
    rec(0, total);
}

inline bool has_zero(const MultiIndex& m) {
    for (int x : m)
        if (x == 0) return true;
    return false;
}

inline bool all_even(const MultiIndex& m) {
    for (int x : m)
        if (x % 2 != 0) return false;
    return true;
}

inline bool all_positive(const MultiIndex& m) {
    for (int x : m)
        if (x < 1) return false;
    return true;
}

}  // namespace toddsum
