#include "hodgeft/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hodgeft/graph.hpp"

namespace hodgeft {

std::string CheckReport::to_string() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << ' ' << name << " (" << keys_checked << " keys";
    if (!pass)
        os << ", " << failures.size() << " failing";
    os << ")";
    if (!note.empty())
        os << " " << note;
    os << '\n';
    for (const auto& fl : failures)
        os << "  g=" << fl.g << " " << key_str(fl.key) << ": " << fl.lhs.str()
           << " != " << fl.rhs.str() << '\n';
    return os.str();
}

Mat eta_slice(const HodgeAlgebra& alg, const LogPotential& f) {
    int s = f.basis_dim;
    if (s > alg.dim())
        throw InputError("potential uses more basis indices than the algebra has");
    Mat out(s, Vec(s, Rat(0)));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            out[i][j] = alg.eta()[i][j];
    return out;
}

namespace {

// table value at a possibly unsorted insertion tuple, with the Koszul sign
Rat corr_at(const LogPotential& f, const ParityVec& par, int g, Key tuple) {
    int sign;
    Key k = sorted_key(std::move(tuple), par, sign);
    if (sign == 0)
        return Rat(0);
    Rat v = f.correlator_get(g, k);
    return sign < 0 ? -v : v;
}

} // namespace

CheckReport check_string(const LogPotential& f, const HodgeAlgebra& alg) {
    CheckReport rep;
    rep.name = "string";
    const ParityVec& par = alg.basis.parity;
    const Ins unit0{0, 0};
    Mat eta = eta_slice(alg, f);
    for (const auto& [g, k] : window_keys(f.window, f.basis_dim, par, 0, f.has_3g2)) {
        if (multiplicity(k, unit0) == 0)
            continue;
        Rat w;
        SignedKey rest = derive(k, unit0, par, w); // e_1 even: no sign, w = multiplicity
        int n = static_cast<int>(rest.key.size());
        Rat lhs = f.correlator_get(g, k);
        Rat rhs(0);
        ++rep.keys_checked;
        if (n == 0) {
            // <tau_0(e_1)>_g: empty string sum
            rhs = Rat(0);
        } else if (2 * g - 2 + n > 0) {
            for (int j = 0; j < n; ++j) {
                if (rest.key[j].d == 0)
                    continue;
                Key low = rest.key;
                --low[j].d;
                rhs += corr_at(f, par, g, std::move(low));
            }
        } else if (g == 0 && n == 2) {
            // three-point base: eta when both psi powers vanish
            rhs = (rest.key[0].d == 0 && rest.key[1].d == 0) ? eta[rest.key[0].i][rest.key[1].i]
                                                             : Rat(0);
        } else {
            continue; // no stable reduction and no base case applies
        }
        if (lhs != rhs) {
            rep.pass = false;
            rep.failures.push_back({g, k, lhs, rhs});
        }
    }
    return rep;
}

CheckReport check_dilaton(const LogPotential& f, const HodgeAlgebra& alg) {
    CheckReport rep;
    rep.name = "dilaton";
    const ParityVec& par = alg.basis.parity;
    const Ins dil{1, 0};
    for (const auto& [g, k] : window_keys(f.window, f.basis_dim, par, 0, f.has_3g2)) {
        if (multiplicity(k, dil) == 0)
            continue;
        Rat w;
        SignedKey rest = derive(k, dil, par, w);
        int n = static_cast<int>(rest.key.size());
        if (n < 1 || 2 * g - 2 + n <= 0)
            continue;
        ++rep.keys_checked;
        Rat lhs = f.correlator_get(g, k);
        Rat rhs = Rat(2 * g - 2 + n) * f.correlator_get(g, rest.key);
        if (lhs != rhs) {
            rep.pass = false;
            rep.failures.push_back({g, k, lhs, rhs});
        }
    }
    return rep;
}

namespace {

// coefficient of m(M) in d_{x1} d_{x2} ... F_0 (rightmost derivative innermost)
Rat multi_deriv_coeff(const TableFSource& src, const ParityVec& par, const Key& m,
                      const std::vector<Ins>& xs) {
    Key source = m;
    for (const Ins& x : xs) {
        SignedKey ins = insert_var(source, x, par);
        if (ins.sign == 0)
            return Rat(0);
        source = std::move(ins.key);
    }
    Rat total(1);
    Key k = source;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
        Rat w;
        SignedKey rest = derive(k, *it, par, w);
        if (w.is_zero())
            return Rat(0);
        total *= w;
        k = std::move(rest.key);
    }
    return total * src.at(-1, source);
}

// every sorted multiset of insertions with up to n_max entries over the
// basis slice (no stability or parity filtering; odd repeats dropped)
std::vector<Key> all_multisets(int n_max, int d_max, int s, const ParityVec& par) {
    std::vector<Key> out;
    Key cur;
    std::function<void(Ins)> rec = [&](Ins min_next) {
        out.push_back(cur);
        if (static_cast<int>(cur.size()) == n_max)
            return;
        for (int d = min_next.d; d <= d_max; ++d)
            for (int i = (d == min_next.d ? min_next.i : 0); i < s; ++i) {
                if (par[i] && !cur.empty() && cur.back() == Ins{d, i})
                    continue;
                cur.push_back(Ins{d, i});
                rec(Ins{d, i});
                cur.pop_back();
            }
    };
    rec(Ins{0, 0});
    return out;
}

} // namespace

CheckReport check_trr0(const LogPotential& f, const HodgeAlgebra& alg) {
    CheckReport rep;
    rep.name = "trr0";
    const ParityVec& par = alg.basis.parity;
    int s = f.basis_dim;
    Mat eta = eta_slice(alg, f);
    auto eta_inv = mat_inverse(eta);
    if (!eta_inv) {
        rep.pass = false;
        rep.note = "eta restricted to the potential's basis slice is degenerate";
        return rep;
    }
    TableFSource src(f, par);
    const TruncationWindow& w = f.window;
    std::vector<Key> extras = all_multisets(w.n_max - 3, w.d_max, s, par);
    for (int a = 0; a + 1 <= w.d_max; ++a)
        for (int i = 0; i < s; ++i)
            for (int b = 0; b <= w.d_max; ++b)
                for (int j = 0; j < s; ++j)
                    for (int c = 0; c <= w.d_max; ++c)
                        for (int kk = 0; kk < s; ++kk) {
                            if (std::make_pair(b, j) > std::make_pair(c, kk))
                                continue; // symmetric in the two plain slots
                            Ins xi{a + 1, i}, xa{a, i}, xb{b, j}, xc{c, kk};
                            for (const Key& m : extras) {
                                Rat lhs = multi_deriv_coeff(src, par, m, {xi, xb, xc});
                                Rat rhs(0);
                                for (const auto& [m1, m2] : multiset_splits(m)) {
                                    SignedKey merged = merge_vars(m1, m2, par);
                                    if (merged.sign == 0)
                                        continue;
                                    for (int al = 0; al < s; ++al)
                                        for (int be = 0; be < s; ++be) {
                                            const Rat& e = (*eta_inv)[al][be];
                                            if (e.is_zero())
                                                continue;
                                            Rat left = multi_deriv_coeff(src, par, m1,
                                                                         {xa, Ins{0, al}});
                                            if (left.is_zero())
                                                continue;
                                            Rat right = multi_deriv_coeff(src, par, m2,
                                                                          {Ins{0, be}, xb, xc});
                                            if (right.is_zero())
                                                continue;
                                            Rat term = e * left * right;
                                            rhs += merged.sign < 0 ? -term : term;
                                        }
                                }
                                ++rep.keys_checked;
                                if (lhs != rhs) {
                                    rep.pass = false;
                                    Key witness = m;
                                    witness.push_back(xi);
                                    witness.push_back(xb);
                                    witness.push_back(xc);
                                    int sg;
                                    witness = sorted_key(std::move(witness), par, sg);
                                    rep.failures.push_back({0, witness, lhs, rhs});
                                }
                            }
                        }
    return rep;
}

CheckReport check_3g2(const LogPotential& f) {
    CheckReport rep;
    rep.name = "3g2";
    for (const auto& [gk, v] : f.corr) {
        const auto& [g, k] = gk;
        ++rep.keys_checked;
        if (psi_degree(k) > 3 * g - 3 + static_cast<int>(k.size()) && !v.is_zero()) {
            rep.pass = false;
            rep.failures.push_back({g, k, v, Rat(0)});
        }
    }
    return rep;
}

CheckReport check_equivalence(const HodgeAlgebra& alg, const TruncationWindow& w, int jobs) {
    CheckReport rep;
    rep.name = "equivalence";
    LogPotential graph = graph_sum_potential(alg, w, jobs);
    LogPotential oper = hodge_potential(alg, w);
    std::set<std::pair<int, Key>> keys;
    for (const auto& [gk, v] : graph.corr)
        keys.insert(gk);
    for (const auto& [gk, v] : oper.corr)
        keys.insert(gk);
    for (const auto& [g, k] : window_keys(w, alg.h0_dim, alg.basis.parity))
        keys.insert({g, k});
    for (const auto& [g, k] : keys) {
        ++rep.keys_checked;
        Rat a = graph.correlator_get(g, k);
        Rat b = oper.correlator_get(g, k);
        if (a != b) {
            rep.pass = false;
            rep.failures.push_back({g, k, a, b});
        }
    }
    return rep;
}

namespace {

CheckReport cohft_checks_on(const LogPotential& g, const HodgeAlgebra& alg) {
    CheckReport rep;
    rep.name = "givental-invariance";
    for (const CheckReport& sub :
         {check_string(g, alg), check_dilaton(g, alg), check_trr0(g, alg), check_3g2(g)}) {
        rep.keys_checked += sub.keys_checked;
        if (!sub.pass) {
            rep.pass = false;
            rep.note += (rep.note.empty() ? "" : "; ") + sub.name + " failed";
            rep.failures.insert(rep.failures.end(), sub.failures.begin(), sub.failures.end());
        }
    }
    return rep;
}

} // namespace

CheckReport check_givental_invariance(const LogPotential& f, const RMatrixSeries& r,
                                      const HodgeAlgebra& alg) {
    return cohft_checks_on(exp_op_apply(r, f, alg, f.window), alg);
}

CheckReport check_givental_invariance(const HodgeAlgebra& alg, const RMatrixSeries& r,
                                      const TruncationWindow& w) {
    TftFSource z0(alg);
    return cohft_checks_on(
        exp_op_apply(r, z0, alg, w, LogPotential::Slice::Full, alg.dim()), alg);
}

CheckReport report_from_vanishing(const std::string& name, const VanishingReport& v) {
    CheckReport rep;
    rep.name = name;
    rep.pass = v.pass;
    for (const auto& [g, k, val] : v.failures)
        rep.failures.push_back({g, k, val, Rat(0)});
    return rep;
}

} // namespace hodgeft
