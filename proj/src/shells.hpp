#pragma once

// Dual points on the shells |s|_p = p^l: enumeration, seeded sampling and
// the points near the F_M spikes.

#include <functional>
#include <random>
#include <vector>

#include "padic/kaufman.hpp"

namespace padic::detail {

/// Number of s with |s|_p = p^l in dimension d; UINT64_MAX when that overflows.
u64 shell_size(unsigned p, unsigned d, unsigned l);

/// Numerators a in [0, p^l)^d of the points with |a / p^l|_p = p^l.
std::vector<std::vector<u64>> shell_points(unsigned p, unsigned d, unsigned l);

/// Mixes a seed with up to two labels so every shell gets its own stream.
u64 mix_seed(u64 seed, u64 a, u64 b = 0);

/// Uniform points of the shell, drawn from a generator seeded by mix_seed.
std::vector<std::vector<u64>> sample_shell(unsigned p, unsigned d, unsigned l, u64 count, u64 seed);

/// Level of a / p^l after reduction, i.e. l minus the common p-valuation.
unsigned point_level(unsigned p, const std::vector<u64>& a, unsigned l);

/// s = (q w mod p^l) / p^l (row-wise w_i q in the matrix case), shifted by
/// the nonzero entries t of the dual cache of mu_{k-1}, largest |mu_{k-1}^(t)|
/// first, while the total stays under `cap`. Only points on the shell l are returned.
std::vector<std::vector<u64>> structured_points(const KaufmanMeasure& K, unsigned k, unsigned l, u64 cap = 20'000);

/// Same as structured_points with the spike points of a bare F_M.
std::vector<std::vector<u64>> spike_points(const FMData& f, unsigned l);

/// Shell points to test: all of them when the shell has at most `cap`
/// points, else `samples` seeded ones. `exhaustive` reports which.
std::vector<std::vector<u64>> shell_selection(unsigned p, unsigned d, unsigned l, u64 cap, u64 samples, u64 seed,
                                              bool& exhaustive);

}  // namespace padic::detail
