#include "hodgeft/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace hodgeft {

Mat mat_zero(int n) { return Mat(n, Vec(n, Rat(0))); }

Mat mat_identity(int n) {
    Mat m = mat_zero(n);
    for (int i = 0; i < n; ++i)
        m[i][i] = Rat(1);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    int n = static_cast<int>(a.size());
    Mat out = mat_zero(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k].is_zero())
                continue;
            for (int j = 0; j < n; ++j)
                if (!b[k][j].is_zero())
                    out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Mat mat_add(const Mat& a, const Mat& b) {
    Mat out = a;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j)
            out[i][j] += b[i][j];
    return out;
}

Mat mat_scale(const Rat& c, const Mat& a) {
    Mat out = a;
    for (auto& row : out)
        for (auto& x : row)
            x *= c;
    return out;
}

Vec mat_apply(const Mat& m, const Vec& v) {
    int n = static_cast<int>(m.size());
    Vec out(n, Rat(0));
    for (int j = 0; j < n; ++j) {
        if (v[j].is_zero())
            continue;
        for (int i = 0; i < n; ++i)
            if (!m[i][j].is_zero())
                out[i] += m[i][j] * v[j];
    }
    return out;
}

bool mat_is_zero(const Mat& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (!x.is_zero())
                return false;
    return true;
}

int mat_rank(Mat m) {
    if (m.empty())
        return 0;
    int n = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < n; ++c) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (!m[r][c].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(m[rank], m[pivot]);
        Rat inv = Rat(1) / m[rank][c];
        for (int j = c; j < cols; ++j)
            m[rank][j] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == rank || m[r][c].is_zero())
                continue;
            Rat f = m[r][c];
            for (int j = c; j < cols; ++j)
                m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

Rat mat_det(Mat m) {
    int n = static_cast<int>(m.size());
    Rat det(1);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (!m[r][c].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            return Rat(0);
        if (pivot != c) {
            std::swap(m[c], m[pivot]);
            det = -det;
        }
        det *= m[c][c];
        Rat inv = Rat(1) / m[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero())
                continue;
            Rat f = m[r][c] * inv;
            for (int j = c; j < n; ++j)
                m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

std::optional<Mat> mat_inverse(const Mat& m) {
    int n = static_cast<int>(m.size());
    Mat a = m;
    Mat inv = mat_identity(n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (!a[r][c].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            return std::nullopt;
        std::swap(a[c], a[pivot]);
        std::swap(inv[c], inv[pivot]);
        Rat f = Rat(1) / a[c][c];
        for (int j = 0; j < n; ++j) {
            a[c][j] *= f;
            inv[c][j] *= f;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero())
                continue;
            Rat g = a[r][c];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= g * a[c][j];
                inv[r][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

void HodgeAlgebra::finalize() {
    int s = dim();
    if (s < 1)
        throw InputError("algebra needs at least the unit basis vector");
    if (static_cast<int>(basis.parity.size()) != s)
        throw InputError("parity list length mismatch");
    if (basis.parity[0] != 0)
        throw InputError("unit basis vector e_1 must be even");
    if (static_cast<int>(integral.size()) != s)
        throw InputError("integral covector length mismatch");
    auto check_mat = [&](const Mat& m, const char* what) {
        if (static_cast<int>(m.size()) != s)
            throw InputError(std::string(what) + ": row count mismatch");
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != s)
                throw InputError(std::string(what) + ": column count mismatch");
    };
    check_mat(Q, "Q");
    check_mat(Gm, "Gm");
    check_mat(Gp, "Gp");
    if (static_cast<int>(prod.size()) != s)
        throw InputError("multiplication table dimension mismatch");
    for (const auto& row : prod)
        if (static_cast<int>(row.size()) != s)
            throw InputError("multiplication table dimension mismatch");
    if (h0_dim < 1 || h0_dim > s)
        throw InputError("h0_dim out of range");

    eta_ = mat_zero(s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            eta_[i][j] = pair(basis_vec(i), basis_vec(j));
    eta_inv_ = mat_inverse(eta_);
    words_ = std::make_shared<WordCache>();
}

const Mat& HodgeAlgebra::eta_inv() const {
    if (!eta_inv_)
        throw InputError("scalar product is degenerate (A7 fails)");
    return *eta_inv_;
}

Vec HodgeAlgebra::basis_vec(int i) const {
    Vec v(dim(), Rat(0));
    v[i] = Rat(1);
    return v;
}

Vec HodgeAlgebra::mul(const Vec& a, const Vec& b) const {
    Vec out(dim(), Rat(0));
    for (int i = 0; i < dim(); ++i) {
        if (a[i].is_zero())
            continue;
        for (int j = 0; j < dim(); ++j) {
            if (b[j].is_zero())
                continue;
            Rat c = a[i] * b[j];
            for (const auto& [k, coef] : prod[i][j])
                out[k] += c * coef;
        }
    }
    return out;
}

Rat HodgeAlgebra::integrate(const Vec& a) const {
    Rat out(0);
    for (int i = 0; i < dim(); ++i)
        if (!a[i].is_zero())
            out += a[i] * integral[i];
    return out;
}

Rat HodgeAlgebra::integrate_word(const std::vector<int>& word) const {
    if (word.empty())
        return integral[0]; // integral of the unit
    if (!words_)
        throw InputError("algebra used before finalize()");
    {
        std::lock_guard<std::mutex> lock(words_->mutex);
        auto it = words_->memo.find(word);
        if (it != words_->memo.end())
            return it->second;
    }
    Vec acc = basis_vec(word[0]);
    for (std::size_t t = 1; t < word.size(); ++t) {
        acc = mul(acc, basis_vec(word[t]));
        bool zero = true;
        for (const auto& x : acc)
            if (!x.is_zero()) {
                zero = false;
                break;
            }
        if (zero)
            break;
    }
    Rat v = integrate(acc);
    std::lock_guard<std::mutex> lock(words_->mutex);
    return words_->memo.emplace(word, std::move(v)).first->second;
}

Mat HodgeAlgebra::mult_operator(const Vec& a) const {
    Mat m = mat_zero(dim());
    for (int c = 0; c < dim(); ++c) {
        Vec col = mul(a, basis_vec(c));
        for (int r = 0; r < dim(); ++r)
            m[r][c] = col[r];
    }
    return m;
}

bool AxiomReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

bool AxiomReport::passed(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name)
            return c.pass;
    return false;
}

std::string AxiomReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "pass " : "FAIL ") << c.name;
        if (!c.pass && !c.witness.empty())
            os << "  [" << c.witness << "]";
        os << '\n';
    }
    return os.str();
}

bool is_homogeneous(const Mat& m, const ParityVec& parity, int op_parity) {
    int n = static_cast<int>(m.size());
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!m[r][c].is_zero() && parity[r] != (parity[c] ^ op_parity))
                return false;
    return true;
}

Rat supertrace(const Mat& m, const ParityVec& parity) {
    Rat out(0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (parity[i])
            out -= m[i][i];
        else
            out += m[i][i];
    }
    return out;
}

namespace {

std::string ename(const HodgeAlgebra& a, int i) { return a.basis.names[i]; }

void add_check(AxiomReport& rep, std::string name, bool pass, std::string witness = {}) {
    rep.checks.push_back({std::move(name), pass, pass ? std::string{} : std::move(witness)});
}

} // namespace

AxiomReport check_axioms(const HodgeAlgebra& a) {
    AxiomReport rep;
    int s = a.dim();
    const ParityVec& par = a.basis.parity;

    // unit
    {
        bool ok = true;
        std::string w;
        for (int j = 0; j < s && ok; ++j) {
            Vec lhs = a.mul(a.basis_vec(0), a.basis_vec(j));
            if (lhs != a.basis_vec(j)) {
                ok = false;
                w = "e1*" + ename(a, j);
            }
        }
        add_check(rep, "unit", ok, w);
    }
    // parity grading of the product and evenness of the integral
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < s && ok; ++i)
            for (int j = 0; j < s && ok; ++j)
                for (const auto& [k, c] : a.prod[i][j])
                    if (!c.is_zero() && par[k] != (par[i] ^ par[j])) {
                        ok = false;
                        w = ename(a, i) + "*" + ename(a, j);
                    }
        for (int i = 0; i < s; ++i)
            if (par[i] && !a.integral[i].is_zero()) {
                ok = false;
                w = "integral(" + ename(a, i) + ") != 0";
            }
        add_check(rep, "parity", ok, w);
    }
    // supercommutativity
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < s && ok; ++i)
            for (int j = i; j < s && ok; ++j) {
                Vec ab = a.mul(a.basis_vec(i), a.basis_vec(j));
                Vec ba = a.mul(a.basis_vec(j), a.basis_vec(i));
                if (par[i] && par[j])
                    for (auto& x : ba)
                        x = -x;
                if (ab != ba) {
                    ok = false;
                    w = ename(a, i) + "," + ename(a, j);
                }
            }
        add_check(rep, "supercommutative", ok, w);
    }
    // associativity
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < s && ok; ++i)
            for (int j = 0; j < s && ok; ++j)
                for (int k = 0; k < s && ok; ++k) {
                    Vec lhs = a.mul(a.mul(a.basis_vec(i), a.basis_vec(j)), a.basis_vec(k));
                    Vec rhs = a.mul(a.basis_vec(i), a.mul(a.basis_vec(j), a.basis_vec(k)));
                    if (lhs != rhs) {
                        ok = false;
                        w = ename(a, i) + "," + ename(a, j) + "," + ename(a, k);
                    }
                }
        add_check(rep, "associative", ok, w);
    }
    // operator parities
    add_check(rep, "operators-odd",
              is_homogeneous(a.Q, par, 1) && is_homogeneous(a.Gm, par, 1) &&
                  is_homogeneous(a.Gp, par, 1),
              "Q, G- or G+ not an odd homogeneous operator");

    // A1: bicomplex
    {
        Mat q2 = mat_mul(a.Q, a.Q);
        Mat g2 = mat_mul(a.Gm, a.Gm);
        Mat anti = mat_add(mat_mul(a.Q, a.Gm), mat_mul(a.Gm, a.Q));
        std::string w;
        if (!mat_is_zero(q2))
            w = "Q^2 != 0";
        else if (!mat_is_zero(g2))
            w = "G-^2 != 0";
        else if (!mat_is_zero(anti))
            w = "QG- + G-Q != 0";
        add_check(rep, "A1", w.empty(), w);
    }
    // A2: Hodge decomposition via G+
    {
        Mat pi4 = mat_add(mat_mul(a.Q, a.Gp), mat_mul(a.Gp, a.Q));
        Mat pi0 = mat_add(mat_identity(s), mat_scale(Rat(-1), pi4));
        std::string w;
        if (!mat_is_zero(mat_add(mat_mul(pi4, pi4), mat_scale(Rat(-1), pi4))))
            w = "[Q,G+] is not a projector";
        else if (!mat_is_zero(mat_mul(a.Q, pi0)))
            w = "Q does not vanish on H0";
        else if (!mat_is_zero(mat_mul(a.Gm, pi0)))
            w = "G- does not vanish on H0";
        else if (!mat_is_zero(mat_mul(a.Gp, pi0)))
            w = "G+ does not vanish on H0";
        else if (!mat_is_zero(mat_mul(a.Gp, a.Gp)))
            w = "G+^2 != 0";
        else if (!mat_is_zero(mat_add(mat_mul(a.Gm, a.Gp), mat_mul(a.Gp, a.Gm))))
            w = "[G-,G+] != 0";
        else {
            // free action on the blocks: W = im(G+Q) must satisfy dim W = 2 rank(G-|W)
            Mat n = mat_mul(a.Gp, a.Q);
            int dim_w = mat_rank(n);
            int rk = mat_rank(mat_mul(a.Gm, n));
            if (dim_w != 2 * rk)
                w = "H4 does not split into free 4-dim blocks";
            else if (mat_rank(pi4) != s - a.h0_dim)
                w = "rank of [Q,G+] inconsistent with h0_dim";
            else {
                for (int j = 0; j < a.h0_dim && w.empty(); ++j)
                    for (int r = 0; r < s && w.empty(); ++r)
                        if (!pi4[r][j].is_zero())
                            w = "basis vector " + ename(a, j) + " declared in H0 is not";
            }
        }
        add_check(rep, "A2", w.empty(), w);
    }
    // A3: Leibniz rule for Q
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < s && ok; ++i)
            for (int j = 0; j < s && ok; ++j) {
                Vec lhs = mat_apply(a.Q, a.mul(a.basis_vec(i), a.basis_vec(j)));
                Vec rhs = a.mul(mat_apply(a.Q, a.basis_vec(i)), a.basis_vec(j));
                Vec second = a.mul(a.basis_vec(i), mat_apply(a.Q, a.basis_vec(j)));
                for (int r = 0; r < s; ++r)
                    rhs[r] += par[i] ? -second[r] : second[r];
                if (lhs != rhs) {
                    ok = false;
                    w = ename(a, i) + "," + ename(a, j);
                }
            }
        add_check(rep, "A3", ok, w);
    }
    // A4: 7-term relation for G-
    {
        bool ok = true;
        std::string w;
        auto gm = [&](const Vec& v) { return mat_apply(a.Gm, v); };
        for (int i = 0; i < s && ok; ++i)
            for (int j = 0; j < s && ok; ++j)
                for (int k = 0; k < s && ok; ++k) {
                    Vec va = a.basis_vec(i), vb = a.basis_vec(j), vc = a.basis_vec(k);
                    int pa = par[i], pb = par[j];
                    Vec lhs = gm(a.mul(a.mul(va, vb), vc));
                    Vec acc(s, Rat(0));
                    auto axpy = [&](int sign, const Vec& v) {
                        for (int r = 0; r < s; ++r)
                            acc[r] += sign > 0 ? v[r] : -v[r];
                    };
                    axpy(+1, a.mul(gm(a.mul(va, vb)), vc));
                    axpy((pb * (pa + 1)) % 2 ? -1 : +1, a.mul(vb, gm(a.mul(va, vc))));
                    axpy(pa ? -1 : +1, a.mul(va, gm(a.mul(vb, vc))));
                    axpy(-1, a.mul(a.mul(gm(va), vb), vc));
                    axpy(pa ? +1 : -1, a.mul(va, a.mul(gm(vb), vc)));
                    axpy((pa + pb) % 2 ? +1 : -1, a.mul(a.mul(va, vb), gm(vc)));
                    if (lhs != acc) {
                        ok = false;
                        w = ename(a, i) + "," + ename(a, j) + "," + ename(a, k);
                    }
                }
        add_check(rep, "A4", ok, w);
    }
    // A5: 1/12-axiom
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < s && ok; ++i) {
            Mat ma = a.mult_operator(a.basis_vec(i));
            Rat lhs = supertrace(mat_mul(a.Gm, ma), par);
            Mat mg = a.mult_operator(mat_apply(a.Gm, a.basis_vec(i)));
            Rat rhs = Rat(1, 12) * supertrace(mg, par);
            if (lhs != rhs) {
                ok = false;
                w = "a = " + ename(a, i) + ": " + lhs.str() + " != (1/12)*" +
                    supertrace(mg, par).str();
            }
        }
        add_check(rep, "A5", ok, w);
    }
    // A6: adjointness of Q, G-, G+
    {
        bool ok = true;
        std::string w;
        auto adj = [&](const Mat& op, int extra, const char* tag) {
            for (int i = 0; i < s && ok; ++i)
                for (int j = 0; j < s && ok; ++j) {
                    Rat lhs = a.pair(mat_apply(op, a.basis_vec(i)), a.basis_vec(j));
                    Rat rhs = a.pair(a.basis_vec(i), mat_apply(op, a.basis_vec(j)));
                    if ((par[i] + extra) % 2)
                        rhs = -rhs;
                    if (lhs != rhs) {
                        ok = false;
                        w = std::string(tag) + ": " + ename(a, i) + "," + ename(a, j);
                    }
                }
        };
        adj(a.Q, 1, "Q");
        adj(a.Gm, 0, "G-");
        adj(a.Gp, 0, "G+");
        add_check(rep, "A6", ok, w);
    }
    // A7: non-degenerate scalar product
    {
        Rat det = mat_det(a.eta());
        add_check(rep, "A7", !det.is_zero(), "det eta = 0");
    }
    return rep;
}

SymmetryType symmetry_type(const Mat& m, const HodgeAlgebra& alg) {
    int s = alg.dim();
    const ParityVec& par = alg.basis.parity;
    int op_par;
    if (is_homogeneous(m, par, 0))
        op_par = 0;
    else if (is_homogeneous(m, par, 1))
        op_par = 1;
    else
        throw InputError("operator is not parity-homogeneous");
    bool sym = true, skew = true;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            Rat lhs = alg.pair(mat_apply(m, alg.basis_vec(i)), alg.basis_vec(j));
            Rat rhs = alg.pair(alg.basis_vec(i), mat_apply(m, alg.basis_vec(j)));
            if ((par[i] * op_par) % 2)
                rhs = -rhs;
            if (lhs != rhs)
                sym = false;
            if (lhs != -rhs)
                skew = false;
        }
    if (sym)
        return SymmetryType::Symmetric;
    if (skew)
        return SymmetryType::Skew;
    throw InputError("operator has no definite symmetry type w.r.t. eta");
}

Bivector bivector_of(const Mat& m, const HodgeAlgebra& alg) {
    symmetry_type(m, alg); // validates
    const Mat& einv = alg.eta_inv();
    int s = alg.dim();
    Bivector out;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            Rat c(0);
            for (int k = 0; k < s; ++k)
                if (!m[i][k].is_zero() && !einv[k][j].is_zero())
                    c += m[i][k] * einv[k][j];
            if (!c.is_zero())
                out.push_back({i, j, c});
        }
    return out;
}

Bivector j_twist(const Bivector& b, const ParityVec& parity) {
    Bivector out = b;
    for (auto& t : out)
        if (parity[t.i])
            t.c = -t.c;
    return out;
}

} // namespace hodgeft
