#pragma once

#include <vector>

#include "hodgeft/rational.hpp"

namespace hodgeft {

/// Exact psi-class intersection number <tau_{d_1}...tau_{d_n}>_g on the
/// Deligne-Mumford space, d given as a multiset (any order).
///
/// Returns 0 unless sum(d) == 3g-3+n. Genus 0 uses the closed form
/// (n-3)!/prod(d_j!); higher genus reduces via string, dilaton and the
/// DVV/KdV recursion from the seeds <tau_0^3>_0 = 1, <tau_1>_1 = 1/24.
/// Throws std::domain_error for unstable input (2g-2+n <= 0) or negative d.
/// Memoized; safe to call concurrently.
Rat psi_integral(int g, std::vector<int> d);

} // namespace hodgeft
