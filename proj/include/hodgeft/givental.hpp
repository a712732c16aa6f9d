#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "hodgeft/algebra.hpp"
#include "hodgeft/potential.hpp"
#include "hodgeft/series_ops.hpp"

namespace hodgeft {

/// Upper-triangular group element in exponential coordinates:
/// R(z) = exp(sum r_l z^l). Each r_l must be a parity-homogeneous operator,
/// eta-symmetric for odd l and eta-skewsymmetric for even l; all terms must
/// share one parity (even for honest R-matrices, odd for hatted operators
/// like (G- z)^).
struct RMatrixSeries {
    std::vector<std::pair<int, Mat>> terms; // (l, matrix), l >= 1
};

/// Validates the constraints above and returns the common operator parity.
int validate_rmatrix(const RMatrixSeries& r, const HodgeAlgebra& alg);

/// Lazy monomial-coefficient source for the TFT potential Z of the
/// Frobenius structure: one-vertex graphs with g empty loops, evaluated
/// at any stable key over the full basis. Memoized.
class TftFSource final : public FSource {
  public:
    explicit TftFSource(const HodgeAlgebra& alg) : alg_(alg) {}
    Rat at(int h, const Key& k) const override;
    const HodgeAlgebra& algebra() const { return alg_; }

  private:
    const HodgeAlgebra& alg_;
    mutable std::map<std::pair<int, Key>, Rat> memo_;
    mutable std::mutex mutex_;
};

/// Materialized TFT correlator table over the full basis.
LogPotential tft_potential(const HodgeAlgebra& alg, const TruncationWindow& w);

/// Single application of (r_l z^l)^ to exp(F), on the table. The result is
/// exact wherever the needed source coefficients are known; unknown pulls
/// raise UnknownCoefficient (window overflow). out_w restricts the target
/// window when the source window cannot accommodate the degree shifts at
/// its own boundary; defaults to the window of f.
LogPotential r_hat_apply(int l, const Mat& r, const LogPotential& f, const HodgeAlgebra& alg);
LogPotential r_hat_apply(int l, const Mat& r, const LogPotential& f, const HodgeAlgebra& alg,
                         const TruncationWindow& out_w);

/// Operator exponential exp(sum (r_l z^l)^) applied to a potential source,
/// evaluated per key by the Taylor expansion of the induced flow on log
/// potentials. Requires the 3g-2 property of the source; the per-key Taylor
/// series then terminates after at most 3g-3+n-sum(d) steps (guarded by an
/// iteration cap of 3 g_max + n_max).
class ExpFlow {
  public:
    /// source_parity: total key parity the base source is supported on
    /// (0 for potentials, 1 for images under one odd hatted operator).
    ExpFlow(const RMatrixSeries& r, const FSource& base, const HodgeAlgebra& alg,
            int iteration_cap, int source_parity = 0);

    Rat result(int g, const Key& k) const; // correlator/multfact at (g, key)
    Rat taylor_term(int k, int h, const Key& key) const;

  private:
    const FSource& base_;
    const HodgeAlgebra& alg_;
    int cap_;
    int op_parity_ = 0;
    int source_parity_ = 0;
    std::vector<std::pair<int, Mat>> rs_;
    std::vector<FirstOrderTerm> shift_terms_; // the -(r_l)(e_1) d/dt_{l+1} parts
    std::vector<SecondOrderTerm> second_terms_;
    mutable std::map<std::tuple<int, int, Key>, Rat> memo_;
    mutable std::mutex mutex_;

    std::vector<FirstOrderTerm> first_terms_for(const Key& target) const;
};

LogPotential exp_op_apply(const RMatrixSeries& r, const LogPotential& f, const HodgeAlgebra& alg,
                          const TruncationWindow& out_w);

/// Lazy-source variant: pulls resolve against the source directly, so no
/// enlarged intermediate table is needed.
LogPotential exp_op_apply(const RMatrixSeries& r, const FSource& src, const HodgeAlgebra& alg,
                          const TruncationWindow& out_w, LogPotential::Slice slice,
                          int basis_dim);

/// Z = exp(-(G-G+ z)^) Z_tft restricted to H0: correlator table over the
/// first h0_dim basis indices.
LogPotential hodge_potential(const HodgeAlgebra& alg, const TruncationWindow& w);

/// Derivation sum t_{d,nu} A^mu_nu d/dt_{d,mu} applied to exp(F): every
/// insertion vector is replaced by its image under A, with Koszul signs.
LogPotential leaf_operator_apply(const Mat& a, const LogPotential& f, const HodgeAlgebra& alg);

struct VanishingReport {
    bool pass = true;
    std::vector<std::tuple<int, Key, Rat>> failures; // (g, key, value)
};

/// Evaluates (G- z)^ Z_tft on every in-window key over the full basis and
/// reports all nonvanishing coefficients (correlator normalization).
VanishingReport gminus_z_check(const HodgeAlgebra& alg, const TruncationWindow& w);

/// Evaluates the leaf action of Q on Z_tft over the window (Q-closedness).
VanishingReport q_closed_check(const HodgeAlgebra& alg, const TruncationWindow& w);

} // namespace hodgeft
