#pragma once

#include <string>
#include <vector>

#include "hodgeft/algebra.hpp"
#include "hodgeft/givental.hpp"
#include "hodgeft/potential.hpp"

namespace hodgeft {

struct CheckFailure {
    int g = 0;
    Key key;
    Rat lhs, rhs;
};

struct CheckReport {
    std::string name;
    bool pass = true;
    long keys_checked = 0;
    std::vector<CheckFailure> failures; // all failing keys, not just the first
    std::string note;

    std::string to_string() const;
};

/// eta restricted to the index slice a potential is written over.
Mat eta_slice(const HodgeAlgebra& alg, const LogPotential& f);

/// String equation at correlator level: <tau_0(e_1) prod tau_{d_j}(e_{i_j})>_g
/// equals the sum of the psi-lowered correlators (with Koszul re-sorting
/// signs), plus the three-point base <tau_0(e_1)tau_0(e_i)tau_0(e_j)>_0 = eta_ij.
CheckReport check_string(const LogPotential& f, const HodgeAlgebra& alg);

/// Dilaton at correlator level: <tau_1(e_1) X>_g = (2g-2+n) <X>_g for n >= 1.
CheckReport check_dilaton(const LogPotential& f, const HodgeAlgebra& alg);

/// Genus-0 topological recursion relation, checked as an identity between
/// third and second derivatives of F_0 contracted through eta^{-1}.
CheckReport check_trr0(const LogPotential& f, const HodgeAlgebra& alg);

/// Every stored coefficient with sum(d) > 3g-3+n must vanish.
CheckReport check_3g2(const LogPotential& f);

/// Key-by-key equality of the graph-sum and Givental-operator potentials.
CheckReport check_equivalence(const HodgeAlgebra& alg, const TruncationWindow& w, int jobs = 1);

/// Applies exp(sum (r_l z^l)^) and re-runs string/dilaton/TRR-0/3g-2.
CheckReport check_givental_invariance(const LogPotential& f, const RMatrixSeries& r,
                                      const HodgeAlgebra& alg);

/// Same, starting from the TFT potential of the algebra (computed lazily,
/// so the window never overflows).
CheckReport check_givental_invariance(const HodgeAlgebra& alg, const RMatrixSeries& r,
                                      const TruncationWindow& w);

CheckReport report_from_vanishing(const std::string& name, const VanishingReport& v);

} // namespace hodgeft
