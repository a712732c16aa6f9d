#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgeft/key.hpp"
#include "hodgeft/rational.hpp"

namespace hodgeft {

struct UnknownCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bounds inside which a truncated potential is exact.
struct TruncationWindow {
    int g_max = 2;
    int n_max = 6;
    int d_max = 4;
    bool valid() const { return g_max >= 0 && n_max >= 3 && d_max >= 0; }
    bool contains(int g, const Key& k) const;
};

/// Truncated correlator table: exact values <prod tau_{d_j}(e_{i_j})>_g keyed
/// by genus and sorted insertion multiset. Entries are correlators, not
/// monomial coefficients; the monomial coefficient is <K>/prod(mult!).
struct LogPotential {
    enum class Slice { Full, H0 };

    TruncationWindow window;
    bool has_3g2 = true;  // all coefficients with sum(d) > 3g-3+n vanish
    Slice slice = Slice::Full;
    int basis_dim = 1; // number of basis indices the keys draw from
    std::map<std::pair<int, Key>, Rat> corr;

    void set(int g, const Key& k, const Rat& v);
    bool operator==(const LogPotential&) const = default;

    /// Stored value or exact zero for stable in-window keys. Unstable keys
    /// and out-of-window keys not forced to vanish by the 3g-2 property are
    /// errors, never silent zeros.
    Rat correlator_get(int g, const Key& k) const;
};

/// Monomial-coefficient view of a potential: f(h, K) with h the hbar power
/// (h = g − 1 for the genus-g part). Tri-state semantics: vanishing keys
/// (unstable, wrong parity, beyond 3g-2) give 0, genuinely unknown ones
/// throw UnknownCoefficient.
class FSource {
  public:
    virtual ~FSource() = default;
    virtual Rat at(int h, const Key& k) const = 0;
};

class TableFSource final : public FSource {
  public:
    TableFSource(const LogPotential& p, const ParityVec& par) : p_(p), par_(par) {}
    Rat at(int h, const Key& k) const override;

  private:
    const LogPotential& p_;
    ParityVec par_;
};

/// Generic vanishing rules shared by all potential sources: returns true
/// (and the caller yields 0) for unstable keys, keys of the wrong total
/// parity, odd repeats and, when flag_3g2 applies, keys beyond the 3g-2
/// bound. `parity` is the expected total parity (0 for a potential, 1 for
/// the image under an odd operator).
bool vanishing_key(int g, const Key& k, const ParityVec& par, bool flag_3g2 = true,
                   int parity = 0);

/// All stable in-window keys over indices [0, basis_dim) with the given
/// total parity, no odd repeats and (when pruned) sum(d) <= 3g-3+n, in
/// deterministic sorted order.
std::vector<std::pair<int, Key>> window_keys(const TruncationWindow& w, int basis_dim,
                                             const ParityVec& par, int parity = 0,
                                             bool prune_3g2 = true);

/// Canonical text form. Header lines start with '#'; body lines are
/// `g; (d1,i1)(d2,i2)...; p/q` sorted by (g, key). extra_headers are emitted
/// after the structural ones, sorted by name.
std::string serialize_potential(const LogPotential& p,
                                const std::map<std::string, std::string>& extra_headers = {});
LogPotential parse_potential(const std::string& text, const std::string& origin,
                             std::map<std::string, std::string>* headers_out = nullptr);

} // namespace hodgeft
