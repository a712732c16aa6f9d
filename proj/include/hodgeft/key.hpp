#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "hodgeft/rational.hpp"

namespace hodgeft {

/// One descendant insertion tau_d(e_i): psi-power d and basis index i (0-based).
struct Ins {
    int d = 0;
    int i = 0;
    auto operator<=>(const Ins&) const = default;
};

/// Sorted multiset of insertions. The monomial attached to a key is the
/// product of the variables t_{d,i} in this sorted order; for odd variables
/// that order is the sign reference (Koszul normal form).
using Key = std::vector<Ins>;

using ParityVec = std::vector<int>; // 0 even, 1 odd, indexed by basis index

bool is_sorted_key(const Key& k);
Key sorted_key(Key k, const ParityVec& par, int& sign_out); // sorts, Koszul sign; sign 0 if odd letter repeats

int key_parity(const Key& k, const ParityVec& par);
int psi_degree(const Key& k);
int multiplicity(const Key& k, const Ins& x);
/// prod over distinct insertions of mult!.
Rat mult_factorial(const Key& k);

/// True if some odd insertion appears twice (monomial is zero).
bool has_odd_repeat(const Key& k, const ParityVec& par);

struct SignedKey {
    Key key;
    int sign = 0; // 0 means the monomial vanished
};

/// Left derivative: d/dt_x m(K) = w * m(K \ x). Returns weight w (with
/// multiplicity and Koszul sign folded in; 0 if x not in K) and K \ x.
SignedKey derive(const Key& k, const Ins& x, const ParityVec& par, Rat& weight);

/// t_x * m(K) = sign * m(K + x); sign 0 when x is odd and already present.
SignedKey insert_var(const Key& k, const Ins& x, const ParityVec& par);

/// m(K1) * m(K2) = sign * m(K1 ++ K2 sorted).
SignedKey merge_vars(const Key& k1, const Key& k2, const ParityVec& par);

std::string key_str(const Key& k); // "(d1,i1)(d2,i2)..." with 1-based i
Key key_parse(const std::string& s);

} // namespace hodgeft
