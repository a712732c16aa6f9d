#include "hodgeft/givental.hpp"

#include <algorithm>

#include "hodgeft/graph.hpp"
#include "hodgeft/psi.hpp"

namespace hodgeft {

int validate_rmatrix(const RMatrixSeries& r, const HodgeAlgebra& alg) {
    int op_parity = -1;
    for (const auto& [l, m] : r.terms) {
        if (l < 1)
            throw InputError("R-matrix term with l < 1");
        if (static_cast<int>(m.size()) != alg.dim())
            throw InputError("R-matrix term dimension mismatch");
        int p;
        if (mat_is_zero(m))
            continue;
        if (is_homogeneous(m, alg.basis.parity, 0))
            p = 0;
        else if (is_homogeneous(m, alg.basis.parity, 1))
            p = 1;
        else
            throw InputError("r_" + std::to_string(l) + " is not parity-homogeneous");
        if (op_parity < 0)
            op_parity = p;
        else if (op_parity != p)
            throw InputError("R-matrix terms of mixed operator parity");
        bool want_sym = (l % 2) == 1;
        for (int i = 0; i < alg.dim(); ++i)
            for (int j = 0; j < alg.dim(); ++j) {
                Rat lhs = alg.pair(mat_apply(m, alg.basis_vec(i)), alg.basis_vec(j));
                Rat rhs = alg.pair(alg.basis_vec(i), mat_apply(m, alg.basis_vec(j)));
                if ((alg.basis.parity[i] * p) % 2)
                    rhs = -rhs;
                if (lhs != (want_sym ? rhs : -rhs))
                    throw InputError("r_" + std::to_string(l) +
                                     (want_sym ? " must be eta-symmetric"
                                               : " must be eta-skewsymmetric"));
            }
    }
    return op_parity < 0 ? 0 : op_parity;
}

Rat TftFSource::at(int h, const Key& k) const {
    int g = h + 1;
    if (vanishing_key(g, k, alg_.basis.parity))
        return Rat(0);
    int n = static_cast<int>(k.size());
    if (psi_degree(k) != 3 * g - 3 + n)
        return Rat(0); // one-vertex dimension count
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find({h, k});
        if (it != memo_.end())
            return it->second;
    }
    std::vector<int> d(n);
    std::vector<Vec> lv(n);
    for (int j = 0; j < n; ++j) {
        d[j] = k[j].d;
        lv[j] = alg_.basis_vec(k[j].i);
    }
    DecoratedGraph vertex;
    vertex.loops = {g};
    for (int j = 0; j < n; ++j)
        vertex.leaves.push_back({0, j, k[j].d});
    Rat v = psi_integral(g, d) * t_contraction(vertex, alg_, lv) / mult_factorial(k);
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_.emplace(std::make_pair(h, k), std::move(v)).first->second;
}

LogPotential tft_potential(const HodgeAlgebra& alg, const TruncationWindow& w) {
    if (!w.valid())
        throw std::invalid_argument("invalid truncation window");
    TftFSource src(alg);
    LogPotential out;
    out.window = w;
    out.has_3g2 = true;
    out.slice = LogPotential::Slice::Full;
    out.basis_dim = alg.dim();
    for (const auto& [g, k] : window_keys(w, alg.dim(), alg.basis.parity))
        out.set(g, k, src.at(g - 1, k) * mult_factorial(k));
    return out;
}

namespace {

std::vector<SecondOrderTerm> rhat_second_terms(int l, const Mat& m, const HodgeAlgebra& alg) {
    // (hbar/2) sum_{i=0}^{l-1} (-1)^{i+1} (r_l)_{mu,nu} d^2/dt_{i,mu} dt_{l-1-i,nu}
    // with the lowered matrix (r_l)_{mu,nu} = (eta M^T)_{mu,nu}
    int s = alg.dim();
    Mat lowered = mat_zero(s);
    const Mat& eta = alg.eta();
    for (int mu = 0; mu < s; ++mu)
        for (int nu = 0; nu < s; ++nu) {
            Rat c(0);
            for (int rho = 0; rho < s; ++rho)
                if (!eta[mu][rho].is_zero() && !m[nu][rho].is_zero())
                    c += eta[mu][rho] * m[nu][rho];
            lowered[mu][nu] = c;
        }
    std::vector<SecondOrderTerm> out;
    for (int i = 0; i <= l - 1; ++i) {
        Rat pref = Rat(1, 2) * Rat((i + 1) % 2 ? -1 : 1);
        for (int mu = 0; mu < s; ++mu)
            for (int nu = 0; nu < s; ++nu)
                if (!lowered[mu][nu].is_zero())
                    out.push_back({Ins{i, mu}, Ins{l - 1 - i, nu}, pref * lowered[mu][nu]});
    }
    return out;
}

std::vector<FirstOrderTerm> rhat_shift_terms(int l, const Mat& m, const HodgeAlgebra& alg) {
    // -(r_l)^1_mu d/dt_{l+1,mu} = -[r_l(e_1)]_mu d/dt_{l+1,mu}
    std::vector<FirstOrderTerm> out;
    for (int mu = 0; mu < alg.dim(); ++mu)
        if (!m[mu][0].is_zero())
            out.push_back({std::nullopt, Ins{l + 1, mu}, -m[mu][0]});
    return out;
}

// leaf terms t_{d,nu} (r_l)^nu_mu d/dt_{d+l,mu} relevant for one target key
void rhat_leaf_terms_for(int l, const Mat& m, const Key& target,
                         std::vector<FirstOrderTerm>& out) {
    int s = static_cast<int>(m.size());
    for (std::size_t p = 0; p < target.size(); ++p) {
        if (p > 0 && target[p] == target[p - 1])
            continue; // distinct insertions only
        int nu = target[p].i;
        for (int mu = 0; mu < s; ++mu)
            if (!m[mu][nu].is_zero())
                out.push_back({target[p], Ins{target[p].d + l, mu}, m[mu][nu]});
    }
}

} // namespace

LogPotential r_hat_apply(int l, const Mat& r, const LogPotential& f, const HodgeAlgebra& alg) {
    return r_hat_apply(l, r, f, alg, f.window);
}

LogPotential r_hat_apply(int l, const Mat& r, const LogPotential& f, const HodgeAlgebra& alg,
                         const TruncationWindow& out_w) {
    RMatrixSeries rs;
    rs.terms.push_back({l, r});
    validate_rmatrix(rs, alg);
    std::vector<FirstOrderTerm> first = rhat_shift_terms(l, r, alg);
    // static leaf terms covering all in-window targets
    for (int d = 0; d <= out_w.d_max; ++d)
        for (int nu = 0; nu < alg.dim(); ++nu)
            for (int mu = 0; mu < alg.dim(); ++mu)
                if (!r[mu][nu].is_zero())
                    first.push_back({Ins{d, nu}, Ins{d + l, mu}, r[mu][nu]});
    LogPotential out = apply_operator(f, alg.basis.parity, first, rhat_second_terms(l, r, alg),
                                      &out_w);
    out.has_3g2 = f.has_3g2; // a single hatted application keeps the vanishing
    return out;
}

ExpFlow::ExpFlow(const RMatrixSeries& r, const FSource& base, const HodgeAlgebra& alg,
                 int iteration_cap, int source_parity)
    : base_(base), alg_(alg), cap_(iteration_cap), source_parity_(source_parity),
      rs_(r.terms) {
    op_parity_ = validate_rmatrix(r, alg);
    for (const auto& [l, m] : rs_) {
        auto shift = rhat_shift_terms(l, m, alg);
        shift_terms_.insert(shift_terms_.end(), shift.begin(), shift.end());
        auto sec = rhat_second_terms(l, m, alg);
        second_terms_.insert(second_terms_.end(), sec.begin(), sec.end());
    }
}

std::vector<FirstOrderTerm> ExpFlow::first_terms_for(const Key& target) const {
    std::vector<FirstOrderTerm> out = shift_terms_;
    for (const auto& [l, m] : rs_)
        rhat_leaf_terms_for(l, m, target, out);
    return out;
}

namespace {

class ExpFlowView final : public FSource {
  public:
    ExpFlowView(const ExpFlow& ef, int k) : ef_(ef), k_(k) {}
    Rat at(int h, const Key& key) const override { return ef_.taylor_term(k_, h, key); }

  private:
    const ExpFlow& ef_;
    int k_;
};

} // namespace

Rat ExpFlow::taylor_term(int k, int h, const Key& key) const {
    int g = h + 1;
    if (vanishing_key(g, key, alg_.basis.parity, true,
                      (source_parity_ + k * op_parity_) % 2))
        return Rat(0);
    int defect = 3 * g - 3 + static_cast<int>(key.size()) - psi_degree(key);
    if (k > defect)
        return Rat(0); // each flow step consumes at least one unit
    if (k == 0)
        return base_.at(h, key);
    if (k > cap_)
        throw std::runtime_error(
            "operator exponential did not terminate within the iteration cap (source "
            "lacks the 3g-2 property?)");
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find({k, h, key});
        if (it != memo_.end())
            return it->second;
    }
    ExpFlowView prev(*this, k - 1);
    Rat v = linear_part_at(prev, alg_.basis.parity, first_terms_for(key), second_terms_, h, key);
    // d/dtau of the quadratic piece: sum_j C(k-1,j) Q(F^(j), F^(k-1-j))
    Rat binom(1);
    for (int j = 0; j <= k - 1; ++j) {
        ExpFlowView fa(*this, j), fb(*this, k - 1 - j);
        Rat q = quadratic_part_at(fa, fb, alg_.basis.parity, second_terms_, h, key);
        v += binom * q;
        binom *= Rat(k - 1 - j);
        binom /= Rat(j + 1);
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_.emplace(std::make_tuple(k, h, key), std::move(v)).first->second;
}

Rat ExpFlow::result(int g, const Key& key) const {
    int defect = 3 * g - 3 + static_cast<int>(key.size()) - psi_degree(key);
    if (defect > cap_)
        throw std::runtime_error("key defect exceeds the iteration cap");
    Rat acc(0);
    Rat kfact(1);
    for (int k = 0; k <= std::max(0, defect); ++k) {
        if (k > 0)
            kfact *= Rat(k);
        acc += taylor_term(k, g - 1, key) / kfact;
    }
    return acc;
}

LogPotential exp_op_apply(const RMatrixSeries& r, const FSource& src, const HodgeAlgebra& alg,
                          const TruncationWindow& out_w, LogPotential::Slice slice,
                          int basis_dim) {
    if (!out_w.valid())
        throw std::invalid_argument("invalid truncation window");
    ExpFlow flow(r, src, alg, 3 * out_w.g_max + out_w.n_max);
    LogPotential out;
    out.window = out_w;
    out.has_3g2 = true;
    out.slice = slice;
    out.basis_dim = basis_dim;
    for (const auto& [g, k] : window_keys(out_w, basis_dim, alg.basis.parity))
        out.set(g, k, flow.result(g, k) * mult_factorial(k));
    return out;
}

LogPotential exp_op_apply(const RMatrixSeries& r, const LogPotential& f, const HodgeAlgebra& alg,
                          const TruncationWindow& out_w) {
    if (!f.has_3g2)
        throw InputError("exp_op_apply requires a source with the 3g-2 property");
    TableFSource src(f, alg.basis.parity);
    return exp_op_apply(r, src, alg, out_w, f.slice, f.basis_dim);
}

LogPotential hodge_potential(const HodgeAlgebra& alg, const TruncationWindow& w) {
    TftFSource z0(alg);
    RMatrixSeries r;
    r.terms.push_back({1, mat_scale(Rat(-1), mat_mul(alg.Gm, alg.Gp))});
    return exp_op_apply(r, z0, alg, w, LogPotential::Slice::H0, alg.h0_dim);
}

LogPotential leaf_operator_apply(const Mat& a, const LogPotential& f, const HodgeAlgebra& alg) {
    if (!is_homogeneous(a, alg.basis.parity, 0) && !is_homogeneous(a, alg.basis.parity, 1))
        throw InputError("leaf operator must be parity-homogeneous");
    std::vector<FirstOrderTerm> first;
    for (int d = 0; d <= f.window.d_max; ++d)
        for (int nu = 0; nu < alg.dim(); ++nu)
            for (int mu = 0; mu < alg.dim(); ++mu)
                if (!a[mu][nu].is_zero())
                    first.push_back({Ins{d, nu}, Ins{d, mu}, a[mu][nu]});
    LogPotential out = apply_operator(f, alg.basis.parity, first, {});
    out.has_3g2 = f.has_3g2; // leafwise substitution keeps key shapes
    return out;
}

namespace {

VanishingReport vanishing_scan(const HodgeAlgebra& alg, const TruncationWindow& w, int parity,
                               const std::function<Rat(int, const Key&)>& value) {
    VanishingReport rep;
    auto keys = window_keys(w, alg.dim(), alg.basis.parity, parity);
    // smallest sectors first: failures are reported by (g, n, key)
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        return std::make_tuple(a.first, a.second.size(), a.second) <
               std::make_tuple(b.first, b.second.size(), b.second);
    });
    for (const auto& [g, k] : keys) {
        Rat v = value(g, k);
        if (!v.is_zero()) {
            rep.pass = false;
            rep.failures.push_back({g, k, v * mult_factorial(k)});
        }
    }
    return rep;
}

int operator_parity(const Mat& m, const HodgeAlgebra& alg, const char* what) {
    if (mat_is_zero(m) || is_homogeneous(m, alg.basis.parity, 1))
        return 1; // odd by design; zero operators scan vacuously
    if (is_homogeneous(m, alg.basis.parity, 0))
        return 0;
    throw InputError(std::string(what) + " is not parity-homogeneous");
}

} // namespace

VanishingReport gminus_z_check(const HodgeAlgebra& alg, const TruncationWindow& w) {
    TftFSource z0(alg);
    RMatrixSeries r;
    r.terms.push_back({1, alg.Gm});
    ExpFlow flow(r, z0, alg, 3 * w.g_max + w.n_max);
    int parity = operator_parity(alg.Gm, alg, "G-");
    return vanishing_scan(alg, w, parity, [&](int g, const Key& k) {
        // single application: the degree-one Taylor term of the flow
        return flow.taylor_term(1, g - 1, k);
    });
}

VanishingReport q_closed_check(const HodgeAlgebra& alg, const TruncationWindow& w) {
    TftFSource z0(alg);
    int parity = operator_parity(alg.Q, alg, "Q");
    return vanishing_scan(alg, w, parity, [&](int g, const Key& k) {
        std::vector<FirstOrderTerm> first;
        for (std::size_t p = 0; p < k.size(); ++p) {
            if (p > 0 && k[p] == k[p - 1])
                continue;
            int nu = k[p].i;
            for (int mu = 0; mu < alg.dim(); ++mu)
                if (!alg.Q[mu][nu].is_zero())
                    first.push_back({k[p], Ins{k[p].d, mu}, alg.Q[mu][nu]});
        }
        return linear_part_at(z0, alg.basis.parity, first, {}, g - 1, k);
    });
}

} // namespace hodgeft
