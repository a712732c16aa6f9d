#pragma once

#include <optional>
#include <vector>

#include "hodgeft/potential.hpp"

namespace hodgeft {

/// c * t_a d/dt_b; with no insertion it is the plain derivation c * d/dt_b.
struct FirstOrderTerm {
    std::optional<Ins> insert;
    Ins remove;
    Rat c;
};

/// c * hbar * d^2/dt_x dt_y (applied in the order d_x after d_y).
struct SecondOrderTerm {
    Ins x, y;
    Rat c;
};

/// Linear part of a differential operator acting on exp(F), re-expressed on
/// the log table: first-order terms plus the d^2F piece of the hbar terms.
Rat linear_part_at(const FSource& f, const ParityVec& par,
                   const std::vector<FirstOrderTerm>& first,
                   const std::vector<SecondOrderTerm>& second, int h, const Key& target);

/// Quadratic (key-splitting) part: sum over terms of c*hbar*(d_x Fa)(d_y Fb).
Rat quadratic_part_at(const FSource& fa, const FSource& fb, const ParityVec& par,
                      const std::vector<SecondOrderTerm>& second, int h, const Key& target);

/// All splits of a sorted multiset into an ordered pair of sorted multisets.
std::vector<std::pair<Key, Key>> multiset_splits(const Key& k);

/// Applies (first + hbar*second) to exp(F) and re-expresses the result on
/// the correlator table, over the candidate targets inside out_w (the
/// window of f when absent). Sources beyond the reachable data raise
/// UnknownCoefficient.
LogPotential apply_operator(const LogPotential& f, const ParityVec& par,
                            const std::vector<FirstOrderTerm>& first,
                            const std::vector<SecondOrderTerm>& second,
                            const TruncationWindow* out_w = nullptr);

/// The action of sum_entries c * t_{new} d/dt_{old} on Z = exp(F), as a new
/// correlator table over the window of f. Sources beyond the reachable data
/// raise UnknownCoefficient (window overflow).
LogPotential apply_first_order(const LogPotential& f, const ParityVec& par,
                               const std::vector<FirstOrderTerm>& terms);

/// The action of hbar * sum c * d^2/dt_x dt_y on exp(F) (genus-shifting and
/// key-splitting pieces), as a correlator table over the window of f.
LogPotential apply_second_order(const LogPotential& f, const ParityVec& par,
                                const std::vector<SecondOrderTerm>& terms);

} // namespace hodgeft
