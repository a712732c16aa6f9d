#pragma once

// Test-only psi-intersection oracle, independent of hodgeft::psi_integral:
// plain DVV recursion on the largest descendant (the implementation reduces
// on the smallest and routes through string/dilaton first), seeded by
// <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24. No genus-0 closed form.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "hodgeft/rational.hpp"

namespace oracle {

using hodgeft::Rat;

inline Rat dvv(int g, std::vector<int> d);

inline Rat dvv_stable(int g, std::vector<int> d) {
    int n = static_cast<int>(d.size());
    if (g < 0 || 2 * g - 2 + n <= 0)
        return Rat(0);
    return dvv(g, std::move(d));
}

inline Rat dvv(int g, std::vector<int> d) {
    std::sort(d.begin(), d.end(), std::greater<int>()); // largest first
    int n = static_cast<int>(d.size());
    int total = std::accumulate(d.begin(), d.end(), 0);
    if (total != 3 * g - 3 + n)
        return Rat(0);
    if (g == 0 && n == 3)
        return Rat(1);
    if (g == 1 && n == 1)
        return Rat(1, 24);
    static std::map<std::pair<int, std::vector<int>>, Rat> memo;
    auto it = memo.find({g, d});
    if (it != memo.end())
        return it->second;

    // DVV on the largest entry d[0] = k+1; k = -1 is the string equation,
    // k = 0 the dilaton equation (both with empty boundary sums).
    int k = d[0] - 1;
    std::vector<int> rest(d.begin() + 1, d.end());
    int m = static_cast<int>(rest.size());
    Rat acc(0);
    for (int j = 0; j < m; ++j) {
        std::vector<int> red;
        for (int t = 0; t < m; ++t)
            if (t != j)
                red.push_back(rest[t]);
        red.push_back(k + rest[j]);
        if (k + rest[j] < 0)
            continue;
        acc += hodgeft::double_factorial_odd(k + rest[j]) /
               hodgeft::double_factorial_odd(rest[j] - 1) * dvv_stable(g, red);
    }
    for (int a = 0; a <= k - 1; ++a) {
        int b = k - 1 - a;
        Rat c = hodgeft::double_factorial_odd(a) * hodgeft::double_factorial_odd(b);
        std::vector<int> low = rest;
        low.push_back(a);
        low.push_back(b);
        Rat inner = dvv_stable(g - 1, low);
        for (int g1 = 0; g1 <= g; ++g1)
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                std::vector<int> left{a}, right{b};
                for (int t = 0; t < m; ++t)
                    ((mask >> t) & 1u ? left : right).push_back(rest[t]);
                inner += dvv_stable(g1, left) * dvv_stable(g - g1, right);
            }
        acc += Rat(1, 2) * c * inner;
    }
    Rat v = acc / hodgeft::double_factorial_odd(k + 1); // (2 d_1 + 1)!!
    memo.emplace(std::make_pair(g, std::move(d)), v);
    return v;
}

} // namespace oracle
