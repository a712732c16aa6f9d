#include "hodgeft/series_ops.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace hodgeft {

namespace {

// one occurrence of x removed from k (multiset removal); empty optional if absent
std::optional<Key> remove_one(const Key& k, const Ins& x) {
    auto lo = std::lower_bound(k.begin(), k.end(), x);
    if (lo == k.end() || *lo != x)
        return std::nullopt;
    Key out;
    out.reserve(k.size() - 1);
    out.insert(out.end(), k.begin(), lo);
    out.insert(out.end(), lo + 1, k.end());
    return out;
}

// forward weight of t_a d/dt_b mapping m(K_src) onto m(target); K_src returned
struct Pull {
    Key src;
    Rat w;
};

std::optional<Pull> first_order_pull(const Key& target, const std::optional<Ins>& a, const Ins& b,
                                     const ParityVec& par) {
    Key base = target;
    Rat ins_sign(1);
    if (a) {
        auto rest = remove_one(target, *a);
        if (!rest)
            return std::nullopt;
        base = *rest;
        SignedKey ins = insert_var(base, *a, par);
        if (ins.sign == 0)
            return std::nullopt; // cannot happen for a drawn from target
        ins_sign = Rat(ins.sign);
    }
    SignedKey src = insert_var(base, b, par);
    if (src.sign == 0)
        return std::nullopt; // source monomial vanishes (odd square)
    Rat w;
    derive(src.key, b, par, w); // sums over the b-occurrences of the source
    return Pull{std::move(src.key), w * ins_sign};
}

// forward weight of d^2/dt_x dt_y mapping m(K_src) onto m(target)
std::optional<Pull> second_order_pull(const Key& target, const Ins& x, const Ins& y,
                                      const ParityVec& par) {
    SignedKey k1 = insert_var(target, x, par);
    if (k1.sign == 0)
        return std::nullopt;
    SignedKey k2 = insert_var(k1.key, y, par);
    if (k2.sign == 0)
        return std::nullopt;
    Rat wy, wx;
    SignedKey after_y = derive(k2.key, y, par, wy);
    SignedKey back = derive(after_y.key, x, par, wx);
    (void)back;
    return Pull{std::move(k2.key), wx * wy};
}

} // namespace

Rat linear_part_at(const FSource& f, const ParityVec& par,
                   const std::vector<FirstOrderTerm>& first,
                   const std::vector<SecondOrderTerm>& second, int h, const Key& target) {
    Rat acc(0);
    for (const auto& t : first) {
        if (t.c.is_zero())
            continue;
        auto pull = first_order_pull(target, t.insert, t.remove, par);
        if (!pull)
            continue;
        if (!pull->w.is_zero())
            acc += t.c * pull->w * f.at(h, pull->src);
    }
    for (const auto& t : second) {
        if (t.c.is_zero())
            continue;
        auto pull = second_order_pull(target, t.x, t.y, par);
        if (!pull)
            continue;
        if (!pull->w.is_zero())
            acc += t.c * pull->w * f.at(h - 1, pull->src);
    }
    return acc;
}

std::vector<std::pair<Key, Key>> multiset_splits(const Key& k) {
    // group into runs of equal insertions, then choose sub-multiplicities
    std::vector<std::pair<Ins, int>> runs;
    for (const Ins& x : k) {
        if (!runs.empty() && runs.back().first == x)
            ++runs.back().second;
        else
            runs.push_back({x, 1});
    }
    std::vector<std::pair<Key, Key>> out;
    Key left, right;
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
        if (r == runs.size()) {
            out.push_back({left, right});
            return;
        }
        auto [x, m] = runs[r];
        for (int take = 0; take <= m; ++take) {
            std::size_t l0 = left.size(), r0 = right.size();
            left.insert(left.end(), take, x);
            right.insert(right.end(), m - take, x);
            rec(r + 1);
            left.resize(l0);
            right.resize(r0);
        }
    };
    rec(0);
    return out;
}

Rat quadratic_part_at(const FSource& fa, const FSource& fb, const ParityVec& par,
                      const std::vector<SecondOrderTerm>& second, int h, const Key& target) {
    if (second.empty())
        return Rat(0);
    Rat acc(0);
    auto splits = multiset_splits(target);
    for (const auto& [k1, k2] : splits) {
        SignedKey merged = merge_vars(k1, k2, par);
        if (merged.sign == 0)
            continue;
        Rat msign(merged.sign);
        for (const auto& t : second) {
            if (t.c.is_zero())
                continue;
            // (d_x Fa)_{K1} = w1 * Fa(K1 + x), same on the right factor
            SignedKey s1 = insert_var(k1, t.x, par);
            if (s1.sign == 0)
                continue;
            Rat w1;
            derive(s1.key, t.x, par, w1);
            SignedKey s2 = insert_var(k2, t.y, par);
            if (s2.sign == 0)
                continue;
            Rat w2;
            derive(s2.key, t.y, par, w2);
            Rat w = t.c * msign * w1 * w2;
            if (w.is_zero())
                continue;
            // hbar bookkeeping: one power from the operator, h1 + h2 = h - 1
            for (int h1 = -1; h1 <= h; ++h1) {
                int h2 = h - 1 - h1;
                if (h2 < -1)
                    break;
                Rat va = fa.at(h1, s1.key);
                if (va.is_zero())
                    continue;
                Rat vb = fb.at(h2, s2.key);
                if (vb.is_zero())
                    continue;
                acc += w * va * vb;
            }
        }
    }
    return acc;
}

namespace {

// candidate target keys: images of the table support under the operator terms
std::set<std::pair<int, Key>> candidate_targets(const LogPotential& f, const ParityVec& par,
                                                const std::vector<FirstOrderTerm>& first,
                                                const std::vector<SecondOrderTerm>& second,
                                                const TruncationWindow& out_w) {
    std::set<std::pair<int, Key>> out;
    auto add = [&](int g, Key k) {
        int sgn;
        Key s = sorted_key(std::move(k), par, sgn);
        if (out_w.contains(g, s))
            out.insert({g, std::move(s)});
    };
    for (const auto& [gk, v] : f.corr) {
        const auto& [g, ks] = gk;
        for (const auto& t : first) {
            auto rest = remove_one(ks, t.remove);
            if (!rest)
                continue;
            if (t.insert) {
                Key img = *rest;
                img.push_back(*t.insert);
                add(g, std::move(img));
            } else {
                add(g, *rest);
            }
        }
        for (const auto& t : second) {
            auto r1 = remove_one(ks, t.y);
            if (!r1)
                continue;
            auto r2 = remove_one(*r1, t.x);
            if (r2)
                add(g + 1, *r2);
        }
    }
    if (!second.empty()) {
        for (const auto& [gk1, v1] : f.corr)
            for (const auto& [gk2, v2] : f.corr)
                for (const auto& t : second) {
                    auto r1 = remove_one(gk1.second, t.x);
                    auto r2 = remove_one(gk2.second, t.y);
                    if (!r1 || !r2)
                        continue;
                    Key img = *r1;
                    img.insert(img.end(), r2->begin(), r2->end());
                    add(gk1.first + gk2.first, std::move(img));
                }
    }
    return out;
}

} // namespace

LogPotential apply_operator(const LogPotential& f, const ParityVec& par,
                            const std::vector<FirstOrderTerm>& first,
                            const std::vector<SecondOrderTerm>& second,
                            const TruncationWindow* out_w) {
    TableFSource src(f, par);
    LogPotential out;
    out.window = out_w ? *out_w : f.window;
    out.has_3g2 = false; // a generic operator image need not keep the property
    out.slice = f.slice;
    out.basis_dim = f.basis_dim;
    for (const auto& [g, k] : candidate_targets(f, par, first, second, out.window)) {
        Rat v = linear_part_at(src, par, first, second, g - 1, k);
        v += quadratic_part_at(src, src, par, second, g - 1, k);
        out.set(g, k, v * mult_factorial(k));
    }
    return out;
}

LogPotential apply_first_order(const LogPotential& f, const ParityVec& par,
                               const std::vector<FirstOrderTerm>& terms) {
    return apply_operator(f, par, terms, {});
}

LogPotential apply_second_order(const LogPotential& f, const ParityVec& par,
                                const std::vector<SecondOrderTerm>& terms) {
    return apply_operator(f, par, {}, terms);
}

} // namespace hodgeft
