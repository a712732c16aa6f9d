#include "hodgeft/key.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hodgeft {

bool is_sorted_key(const Key& k) { return std::is_sorted(k.begin(), k.end()); }

Key sorted_key(Key k, const ParityVec& par, int& sign_out) {
    // insertion sort counting odd-odd transpositions
    int sign = 1;
    for (std::size_t i = 1; i < k.size(); ++i) {
        Ins x = k[i];
        std::size_t j = i;
        while (j > 0 && x < k[j - 1]) {
            if (par[x.i] && par[k[j - 1].i])
                sign = -sign;
            k[j] = k[j - 1];
            --j;
        }
        k[j] = x;
    }
    if (has_odd_repeat(k, par))
        sign = 0;
    sign_out = sign;
    return k;
}

int key_parity(const Key& k, const ParityVec& par) {
    int p = 0;
    for (const Ins& x : k)
        p ^= par[x.i];
    return p;
}

int psi_degree(const Key& k) {
    int s = 0;
    for (const Ins& x : k)
        s += x.d;
    return s;
}

int multiplicity(const Key& k, const Ins& x) {
    return static_cast<int>(std::count(k.begin(), k.end(), x));
}

Rat mult_factorial(const Key& k) {
    Rat out(1);
    std::size_t i = 0;
    while (i < k.size()) {
        std::size_t j = i;
        while (j < k.size() && k[j] == k[i])
            ++j;
        out *= factorial(static_cast<int>(j - i));
        i = j;
    }
    return out;
}

bool has_odd_repeat(const Key& k, const ParityVec& par) {
    for (std::size_t i = 1; i < k.size(); ++i)
        if (k[i] == k[i - 1] && par[k[i].i])
            return true;
    return false;
}

SignedKey derive(const Key& k, const Ins& x, const ParityVec& par, Rat& weight) {
    auto lo = std::lower_bound(k.begin(), k.end(), x);
    if (lo == k.end() || *lo != x) {
        weight = Rat(0);
        return {Key{}, 0};
    }
    Key rest;
    rest.reserve(k.size() - 1);
    rest.insert(rest.end(), k.begin(), lo);
    rest.insert(rest.end(), lo + 1, k.end());
    if (par[x.i]) {
        // odd: single occurrence (else the monomial itself is zero);
        // sign from moving the derivative past the odd prefix
        int odd_before = 0;
        for (auto it = k.begin(); it != lo; ++it)
            if (par[it->i])
                ++odd_before;
        weight = (odd_before % 2) ? Rat(-1) : Rat(1);
    } else {
        weight = Rat(multiplicity(k, x));
    }
    return {std::move(rest), 1};
}

SignedKey insert_var(const Key& k, const Ins& x, const ParityVec& par) {
    auto lo = std::lower_bound(k.begin(), k.end(), x);
    if (par[x.i] && lo != k.end() && *lo == x)
        return {Key{}, 0}; // odd square
    int sign = 1;
    if (par[x.i]) {
        for (auto it = k.begin(); it != lo; ++it)
            if (par[it->i])
                sign = -sign;
    }
    Key out;
    out.reserve(k.size() + 1);
    out.insert(out.end(), k.begin(), lo);
    out.push_back(x);
    out.insert(out.end(), lo, k.end());
    return {std::move(out), sign};
}

SignedKey merge_vars(const Key& k1, const Key& k2, const ParityVec& par) {
    Key out;
    out.reserve(k1.size() + k2.size());
    int sign = 1;
    std::size_t i = 0, j = 0;
    int odd_left = 0; // odd letters of k1 not yet emitted
    for (const Ins& x : k1)
        if (par[x.i])
            ++odd_left;
    while (i < k1.size() || j < k2.size()) {
        bool take1 = j == k2.size() || (i < k1.size() && !(k2[j] < k1[i]));
        if (take1) {
            if (par[k1[i].i])
                --odd_left;
            out.push_back(k1[i++]);
        } else {
            // letter from k2 jumps over the remaining odd letters of k1
            if (par[k2[j].i] && (odd_left % 2))
                sign = -sign;
            out.push_back(k2[j++]);
        }
    }
    if (has_odd_repeat(out, par))
        return {Key{}, 0};
    return {std::move(out), sign};
}

std::string key_str(const Key& k) {
    std::ostringstream os;
    for (const Ins& x : k)
        os << '(' << x.d << ',' << (x.i + 1) << ')';
    return os.str();
}

Key key_parse(const std::string& s) {
    Key out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] != '(')
            throw std::invalid_argument("bad key syntax: '" + s + "'");
        std::size_t comma = s.find(',', pos);
        std::size_t close = s.find(')', pos);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            throw std::invalid_argument("bad key syntax: '" + s + "'");
        int d = std::stoi(s.substr(pos + 1, comma - pos - 1));
        int i = std::stoi(s.substr(comma + 1, close - comma - 1));
        if (d < 0 || i < 1)
            throw std::invalid_argument("bad insertion in key: '" + s + "'");
        out.push_back(Ins{d, i - 1});
        pos = close + 1;
    }
    if (!is_sorted_key(out))
        throw std::invalid_argument("key not in canonical sorted order: '" + s + "'");
    return out;
}

} // namespace hodgeft
