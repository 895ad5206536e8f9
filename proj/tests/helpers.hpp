#pragma once

// Shared test fixtures: common sets and seeded random generators for
// eventually periodic values.

#include <random>

#include "felab/natset.hpp"

namespace felab::testing {

inline NatSet evens() { return NatSet::arithmetic(0, 2); }
inline NatSet odds() { return NatSet::arithmetic(1, 2); }
inline NatSet mult(u64 d) { return NatSet::arithmetic(0, d); }

// Random eventually periodic set with threshold <= t_max and period <=
// p_max.  The mask is guaranteed nonempty so the result is infinite.
inline NatSet random_ep(std::mt19937_64& rng, u64 t_max = 16, u64 p_max = 12,
                        bool allow_finite = false) {
    std::uniform_int_distribution<u64> tdist(0, t_max), pdist(1, p_max);
    std::bernoulli_distribution bit(0.5);
    u64 t = tdist(rng), p = pdist(rng);
    BitVec tr(t), mask(p);
    for (u64 i = 0; i < t; ++i) tr.set(i, bit(rng));
    for (u64 j = 0; j < p; ++j) mask.set(j, bit(rng));
    if (!allow_finite && !mask.any()) mask.set(std::uniform_int_distribution<u64>(0, p - 1)(rng), true);
    return NatSet::periodic(tr, mask);
}

// Random subset of `s` (bitwise thinning), eventually periodic.
inline NatSet random_subset_of(std::mt19937_64& rng, const NatSet& s, double keep = 0.7) {
    std::bernoulli_distribution b(keep);
    u64 t = s.threshold() + 4, p = s.period();
    BitVec tr(t), mask(p);
    for (u64 i = 0; i < t; ++i) tr.set(i, s.contains(i) && b(rng));
    for (u64 j = 0; j < p; ++j) mask.set(j, s.contains(t + j) && b(rng));
    return NatSet::periodic(tr, mask);
}

}  // namespace felab::testing
