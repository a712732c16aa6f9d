#include "hodgeft/potential.hpp"

#include <algorithm>
#include <sstream>

namespace hodgeft {

bool TruncationWindow::contains(int g, const Key& k) const {
    if (g < 0 || g > g_max || static_cast<int>(k.size()) > n_max)
        return false;
    for (const Ins& x : k)
        if (x.d > d_max)
            return false;
    return true;
}

void LogPotential::set(int g, const Key& k, const Rat& v) {
    if (v.is_zero())
        corr.erase({g, k});
    else
        corr[{g, k}] = v;
}

Rat LogPotential::correlator_get(int g, const Key& k) const {
    if (!is_sorted_key(k))
        throw std::invalid_argument("correlator_get: key not sorted");
    int n = static_cast<int>(k.size());
    if (g < 0 || 2 * g - 2 + n <= 0)
        throw std::domain_error("correlator_get: unstable (g,n)");
    if (window.contains(g, k)) {
        auto it = corr.find({g, k});
        return it == corr.end() ? Rat(0) : it->second;
    }
    if (has_3g2 && psi_degree(k) > 3 * g - 3 + n)
        return Rat(0);
    throw UnknownCoefficient("coefficient unknown beyond truncation window at g=" +
                             std::to_string(g) + " key " + key_str(k));
}

bool vanishing_key(int g, const Key& k, const ParityVec& par, bool flag_3g2, int parity) {
    int n = static_cast<int>(k.size());
    if (g < 0 || 2 * g - 2 + n <= 0)
        return true;
    if (key_parity(k, par) != parity || has_odd_repeat(k, par))
        return true;
    if (flag_3g2 && psi_degree(k) > 3 * g - 3 + n)
        return true;
    return false;
}

Rat TableFSource::at(int h, const Key& k) const {
    int g = h + 1;
    if (vanishing_key(g, k, par_, p_.has_3g2))
        return Rat(0);
    if (p_.window.contains(g, k)) {
        auto it = p_.corr.find({g, k});
        if (it == p_.corr.end())
            return Rat(0);
        return it->second / mult_factorial(k);
    }
    if (p_.has_3g2 && psi_degree(k) > 3 * g - 3 + static_cast<int>(k.size()))
        return Rat(0);
    throw UnknownCoefficient("source coefficient unknown beyond truncation at g=" +
                             std::to_string(g) + " key " + key_str(k));
}

namespace {

void gen_keys(const TruncationWindow& w, int basis_dim, const ParityVec& par, int g, int parity,
              bool prune_3g2, Key& cur, Ins min_next, std::vector<std::pair<int, Key>>& out) {
    int n = static_cast<int>(cur.size());
    if (2 * g - 2 + n > 0 && key_parity(cur, par) == parity && !has_odd_repeat(cur, par) &&
        (!prune_3g2 || psi_degree(cur) <= 3 * g - 3 + n))
        out.push_back({g, cur});
    if (n == w.n_max)
        return;
    for (int d = min_next.d; d <= w.d_max; ++d)
        for (int i = (d == min_next.d ? min_next.i : 0); i < basis_dim; ++i) {
            // adding insertions raises the 3g-2 bound faster than the degree
            // cap, so recurse freely and filter on the completed key
            cur.push_back(Ins{d, i});
            gen_keys(w, basis_dim, par, g, parity, prune_3g2, cur, Ins{d, i}, out);
            cur.pop_back();
        }
}

} // namespace

std::vector<std::pair<int, Key>> window_keys(const TruncationWindow& w, int basis_dim,
                                             const ParityVec& par, int parity, bool prune_3g2) {
    std::vector<std::pair<int, Key>> out;
    for (int g = 0; g <= w.g_max; ++g) {
        Key cur;
        gen_keys(w, basis_dim, par, g, parity, prune_3g2, cur, Ins{0, 0}, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string serialize_potential(const LogPotential& p,
                                const std::map<std::string, std::string>& extra_headers) {
    std::ostringstream os;
    os << "# potential-version 1\n";
    os << "# window g_max=" << p.window.g_max << " n_max=" << p.window.n_max
       << " d_max=" << p.window.d_max << "\n";
    os << "# basis " << (p.slice == LogPotential::Slice::H0 ? "h0" : "full")
       << " dim=" << p.basis_dim << "\n";
    os << "# has-3g2 " << (p.has_3g2 ? 1 : 0) << "\n";
    for (const auto& [k, v] : extra_headers)
        os << "# " << k << " " << v << "\n";
    for (const auto& [gk, v] : p.corr)
        os << gk.first << "; " << key_str(gk.second) << "; " << v.str() << "\n";
    return os.str();
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

LogPotential parse_potential(const std::string& text, const std::string& origin,
                             std::map<std::string, std::string>* headers_out) {
    LogPotential p;
    p.basis_dim = 0;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty())
            continue;
        if (t[0] == '#') {
            std::istringstream hs(t.substr(1));
            std::string key;
            hs >> key;
            std::string rest;
            std::getline(hs, rest);
            rest = trim(rest);
            if (key == "window") {
                if (std::sscanf(rest.c_str(), "g_max=%d n_max=%d d_max=%d", &p.window.g_max,
                                &p.window.n_max, &p.window.d_max) != 3)
                    fail("malformed window header");
            } else if (key == "basis") {
                std::string kind;
                int dim = 0;
                std::istringstream bs(rest);
                bs >> kind;
                std::string dimtok;
                bs >> dimtok;
                if (std::sscanf(dimtok.c_str(), "dim=%d", &dim) != 1 ||
                    (kind != "h0" && kind != "full"))
                    fail("malformed basis header");
                p.slice = kind == "h0" ? LogPotential::Slice::H0 : LogPotential::Slice::Full;
                p.basis_dim = dim;
            } else if (key == "has-3g2") {
                p.has_3g2 = rest == "1";
            } else if (headers_out) {
                (*headers_out)[key] = rest;
            }
            continue;
        }
        std::size_t s1 = t.find(';');
        std::size_t s2 = t.rfind(';');
        if (s1 == std::string::npos || s2 == s1)
            fail("expected `g; key; value`");
        int g;
        try {
            g = std::stoi(trim(t.substr(0, s1)));
        } catch (const std::exception&) {
            fail("bad genus field");
            g = 0;
        }
        Key k;
        try {
            k = key_parse(trim(t.substr(s1 + 1, s2 - s1 - 1)));
        } catch (const std::exception& e) {
            fail(e.what());
        }
        Rat v;
        try {
            v = Rat::parse(trim(t.substr(s2 + 1)));
        } catch (const std::exception& e) {
            fail(e.what());
        }
        for (const Ins& x : k)
            p.basis_dim = std::max(p.basis_dim, x.i + 1);
        p.set(g, k, v);
    }
    if (p.basis_dim == 0)
        p.basis_dim = 1;
    return p;
}

} // namespace hodgeft
