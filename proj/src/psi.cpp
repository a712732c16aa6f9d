#include "hodgeft/psi.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace hodgeft {

namespace {

using DKey = std::pair<int, std::vector<int>>;

std::map<DKey, Rat>& memo() {
    static std::map<DKey, Rat> m;
    return m;
}
std::mutex memo_mutex;

Rat compute(int g, const std::vector<int>& d);

Rat lookup(int g, std::vector<int> d) {
    std::sort(d.begin(), d.end());
    int n = static_cast<int>(d.size());
    if (2 * g - 2 + n <= 0)
        throw std::domain_error("psi_integral: unstable (g,n)");
    int total = std::accumulate(d.begin(), d.end(), 0);
    if (total != 3 * g - 3 + n)
        return Rat(0);
    DKey key{g, d};
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo().find(key);
        if (it != memo().end())
            return it->second;
    }
    Rat v = compute(g, key.second);
    std::lock_guard<std::mutex> lock(memo_mutex);
    return memo().emplace(std::move(key), std::move(v)).first->second;
}

// value of <tau_a rest...>_g treating unstable/off-dimension keys as 0
Rat stable_or_zero(int g, std::vector<int> d) {
    int n = static_cast<int>(d.size());
    if (2 * g - 2 + n <= 0)
        return Rat(0);
    return lookup(g, std::move(d));
}

// d sorted ascending, dimension constraint already holds
Rat compute(int g, const std::vector<int>& d) {
    int n = static_cast<int>(d.size());
    if (g == 0) {
        // (n-3)! / prod d_j!
        Rat v = factorial(n - 3);
        for (int x : d)
            v /= factorial(x);
        return v;
    }
    if (g == 1 && n == 1)
        return Rat(1, 24); // <tau_1>_1, the M_{1,1} seed
    if (d.front() == 0) {
        // string equation
        std::vector<int> rest(d.begin() + 1, d.end());
        Rat v(0);
        for (std::size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0)
                continue;
            std::vector<int> low = rest;
            --low[j];
            v += stable_or_zero(g, std::move(low));
        }
        return v;
    }
    if (d.front() == 1) {
        // dilaton equation
        std::vector<int> rest(d.begin() + 1, d.end());
        return Rat(2 * g - 2 + n - 1) * stable_or_zero(g, std::move(rest));
    }
    // DVV recursion on the first insertion, k+1 = d[0] >= 2
    int k = d.front() - 1;
    std::vector<int> rest(d.begin() + 1, d.end());
    int m = static_cast<int>(rest.size());
    Rat acc(0);
    for (int j = 0; j < m; ++j) {
        std::vector<int> red;
        red.reserve(m);
        for (int t = 0; t < m; ++t)
            if (t != j)
                red.push_back(rest[t]);
        red.push_back(k + rest[j]);
        Rat c = double_factorial_odd(k + rest[j]) / double_factorial_odd(rest[j] - 1);
        acc += c * stable_or_zero(g, std::move(red));
    }
    Rat half_sum(0);
    for (int a = 0; a <= k - 1; ++a) {
        int b = k - 1 - a;
        Rat c = double_factorial_odd(a) * double_factorial_odd(b);
        // irreducible boundary: genus drops
        std::vector<int> low = rest;
        low.push_back(a);
        low.push_back(b);
        Rat term = stable_or_zero(g - 1, std::move(low));
        // separating boundary: sum over ordered genus splits and labeled subsets
        for (int g1 = 0; g1 <= g; ++g1) {
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                std::vector<int> left{a}, right{b};
                for (int t = 0; t < m; ++t)
                    ((mask >> t) & 1u ? left : right).push_back(rest[t]);
                term += stable_or_zero(g1, std::move(left)) *
                        stable_or_zero(g - g1, std::move(right));
            }
        }
        half_sum += c * term;
    }
    acc += Rat(1, 2) * half_sum;
    return acc / double_factorial_odd(k + 1); // (2 d_1 + 1)!! on the left side
}

} // namespace

Rat psi_integral(int g, std::vector<int> d) {
    if (g < 0)
        throw std::domain_error("psi_integral: negative genus");
    for (int x : d)
        if (x < 0)
            throw std::domain_error("psi_integral: negative psi power");
    return lookup(g, std::move(d));
}

} // namespace hodgeft
