#pragma once

// Shared test models: small semigroups with known structure.

#include <string>
#include <utility>
#include <vector>

#include "loopwalk/semigroup.hpp"

namespace fixtures {

using loopwalk::FiniteSemigroup;

// Klein 4-group {e, a, b, c} with c = ab, indexed e=0, a=1, b=2, c=3.
inline std::vector<std::vector<int>> klein_table() {
    return {
        {0, 1, 2, 3},
        {1, 0, 3, 2},
        {2, 3, 0, 1},
        {3, 2, 1, 0},
    };
}

inline FiniteSemigroup make_klein() {
    return FiniteSemigroup::from_table(klein_table(), {{"a", 1}, {"b", 2}});
}

inline FiniteSemigroup make_klein_with_zero() { return make_klein().adjoin_zero(); }

// Two constant maps; composition is left zero.
inline FiniteSemigroup make_constant_maps() {
    return FiniteSemigroup::from_transformations({{"a", {0, 0}}, {"b", {1, 1}}});
}

// Two idempotent rank-2 maps forming a right-zero pair: fg = g and gf = f, so
// the minimal ideal splits into two minimal left ideals.
inline FiniteSemigroup make_right_zero() {
    return FiniteSemigroup::from_transformations({{"f", {0, 0, 2}}, {"g", {0, 2, 2}}});
}

// x with x^2 = x^3 = zero: one transient element above a one-point ideal.
inline FiniteSemigroup make_nilpotent() {
    return FiniteSemigroup::from_transformations({{"x", {1, 2, 2}}});
}

inline FiniteSemigroup make_cyclic(int k) {
    std::vector<int> cycle(k);
    for (int i = 0; i < k; ++i) cycle[i] = (i + 1) % k;
    return FiniteSemigroup::from_transformations({{"g", cycle}});
}

inline FiniteSemigroup make_s3() {
    return FiniteSemigroup::from_transformations({{"s", {1, 0, 2}}, {"r", {1, 2, 0}}});
}

} // namespace fixtures
