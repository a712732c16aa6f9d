#pragma once

// Test-only brute-force oracle: truncated multivariate polynomials in the
// variables t_{d,i} (Koszul-graded) and hbar, with literal term-by-term
// differential-operator application on the expanded exponential exp(F).
// Everything here is independent of the per-key Leibniz machinery in
// hodgeft/series_ops.hpp; it exists to cross-check it.

#include <map>
#include <utility>

#include "hodgeft/algebra.hpp"
#include "hodgeft/key.hpp"
#include "hodgeft/potential.hpp"

namespace oracle {

using hodgeft::Ins;
using hodgeft::Key;
using hodgeft::LogPotential;
using hodgeft::ParityVec;
using hodgeft::Rat;

struct Poly {
    // (hbar power, sorted key) -> coefficient
    std::map<std::pair<int, Key>, Rat> terms;

    void add(int h, const Key& k, const Rat& c) {
        if (c.is_zero())
            return;
        auto it = terms.find({h, k});
        if (it == terms.end()) {
            terms[{h, k}] = c;
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms.erase(it);
        }
    }
    bool operator==(const Poly&) const = default;
};

inline Poly truncate(const Poly& p, int max_deg) {
    Poly out;
    for (const auto& [hk, c] : p.terms)
        if (static_cast<int>(hk.second.size()) <= max_deg)
            out.add(hk.first, hk.second, c);
    return out;
}

inline Poly mul(const Poly& a, const Poly& b, const ParityVec& par, int max_deg) {
    Poly out;
    for (const auto& [hk1, c1] : a.terms)
        for (const auto& [hk2, c2] : b.terms) {
            if (static_cast<int>(hk1.second.size() + hk2.second.size()) > max_deg)
                continue;
            hodgeft::SignedKey m = hodgeft::merge_vars(hk1.second, hk2.second, par);
            if (m.sign == 0)
                continue;
            Rat c = c1 * c2;
            out.add(hk1.first + hk2.first, m.key, m.sign < 0 ? -c : c);
        }
    return out;
}

/// log potential as a polynomial: sum hbar^{g-1} <K>/prod(mult!) m(K)
inline Poly from_log(const LogPotential& f, int max_deg) {
    Poly out;
    for (const auto& [gk, v] : f.corr)
        if (static_cast<int>(gk.second.size()) <= max_deg)
            out.add(gk.first - 1, gk.second, v / hodgeft::mult_factorial(gk.second));
    return out;
}

inline Poly exp_poly(const Poly& f, const ParityVec& par, int max_deg) {
    Poly out;
    out.add(0, Key{}, Rat(1));
    Poly power = out;
    Rat kfact(1);
    for (int k = 1; k <= max_deg; ++k) {
        power = mul(power, f, par, max_deg);
        if (power.terms.empty())
            break;
        kfact *= Rat(k);
        for (const auto& [hk, c] : power.terms)
            out.add(hk.first, hk.second, c / kfact);
    }
    return out;
}

inline Poly derivative(const Poly& p, const Ins& x, const ParityVec& par) {
    Poly out;
    for (const auto& [hk, c] : p.terms) {
        Rat w;
        hodgeft::SignedKey rest = hodgeft::derive(hk.second, x, par, w);
        if (!w.is_zero())
            out.add(hk.first, rest.key, c * w);
    }
    return out;
}

inline Poly tmul(const Poly& p, const Ins& x, const ParityVec& par, int max_deg) {
    Poly out;
    for (const auto& [hk, c] : p.terms) {
        if (static_cast<int>(hk.second.size()) + 1 > max_deg)
            continue;
        hodgeft::SignedKey ins = hodgeft::insert_var(hk.second, x, par);
        if (ins.sign != 0)
            out.add(hk.first, ins.key, ins.sign < 0 ? -c : c);
    }
    return out;
}

inline Poly hbar_shift(const Poly& p, int dh) {
    Poly out;
    for (const auto& [hk, c] : p.terms)
        out.add(hk.first + dh, hk.second, c);
    return out;
}

inline Poly add(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [hk, c] : b.terms)
        out.add(hk.first, hk.second, c);
    return out;
}

inline Poly scale(const Rat& c, const Poly& p) {
    Poly out;
    for (const auto& [hk, v] : p.terms)
        out.add(hk.first, hk.second, c * v);
    return out;
}

/// log(1 + u) = u - u^2/2 + u^3/3 - ... for u without constant term.
inline Poly log1p_poly(const Poly& u, const ParityVec& par, int max_deg) {
    Poly out;
    Poly power = u;
    int sign = 1;
    for (int k = 1; k <= max_deg && !power.terms.empty(); ++k) {
        for (const auto& [hk, c] : power.terms)
            out.add(hk.first, hk.second, Rat(sign) * c / Rat(k));
        power = mul(power, u, par, max_deg);
        sign = -sign;
    }
    return out;
}

/// literal (r_l z^l)^ = -(r_l)^1_mu d/dt_{l+1,mu}
///                      + sum t_{d,nu} (r_l)^nu_mu d/dt_{d+l,mu}
///                      + (hbar/2) sum (-1)^{i+1} (eta r^T)_{mu nu} d2/dt_{i,mu} dt_{l-1-i,nu}
/// applied to an expanded series; d ranges over [0, d_hi].
inline Poly rhat_literal(int l, const hodgeft::Mat& m, const hodgeft::HodgeAlgebra& alg,
                         const Poly& z, int d_hi, int max_deg) {
    const ParityVec& par = alg.basis.parity;
    int s = alg.dim();
    Poly out;
    for (int mu = 0; mu < s; ++mu) {
        if (m[mu][0].is_zero())
            continue;
        out = add(out, scale(-m[mu][0], derivative(z, Ins{l + 1, mu}, par)));
    }
    for (int d = 0; d <= d_hi; ++d)
        for (int nu = 0; nu < s; ++nu)
            for (int mu = 0; mu < s; ++mu) {
                if (m[mu][nu].is_zero())
                    continue;
                Poly dz = derivative(z, Ins{d + l, mu}, par);
                out = add(out, scale(m[mu][nu], tmul(dz, Ins{d, nu}, par, max_deg)));
            }
    for (int i = 0; i <= l - 1; ++i) {
        Rat pref = Rat(1, 2) * Rat((i + 1) % 2 ? -1 : 1);
        for (int mu = 0; mu < s; ++mu)
            for (int nu = 0; nu < s; ++nu) {
                Rat c(0);
                for (int rho = 0; rho < s; ++rho)
                    c += alg.eta()[mu][rho] * m[nu][rho];
                if (c.is_zero())
                    continue;
                Poly dd = derivative(derivative(z, Ins{l - 1 - i, nu}, par), Ins{i, mu}, par);
                out = add(out, hbar_shift(scale(pref * c, dd), 1));
            }
    }
    return out;
}

} // namespace oracle
