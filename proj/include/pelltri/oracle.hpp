#pragma once

// Deliberately naive ground truth. The scan loops and the triangularity
// test are written independently of the solver modules they validate;
// the only shared code is the branch-equivalence reducer, which is the
// quantity under test on the solver side as well.

#include <vector>

#include "pelltri/pellcore.hpp"

namespace pelltri {

struct BruteSolution {
    Int t, xi;
};

bool operator==(const BruteSolution& a, const BruteSolution& b);

// All 1 <= t <= t_max with k*t*(t+1)/2 triangular, by the 8m+1 square test.
std::vector<BruteSolution> brute_solutions(const Int& k, const Int& t_max);

// All solutions of X^2 - D*Y^2 = N with 1 <= Y <= y_bound, X >= 0 (plus the
// -X twins), reduced to branch-inequivalent representatives. y_bound must
// cover the fundamental-solution bound; throws std::invalid_argument when
// it does not.
std::vector<GenPair> brute_generalized_fundamentals(const Int& D, const Int& N,
                                                    const Int& y_bound);

}  // namespace pelltri
