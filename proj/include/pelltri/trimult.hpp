#pragma once

// The triangular-multiple problem T_xi = k * T_t mapped to Pell form via
// (X, Y) = (2*xi+1, 2*t+1), which turns it into X^2 - k*Y^2 = 1 - k.
// Only solutions with both coordinates odd map back to integer (xi, t);
// the parity filter keeps exactly the generalized fundamentals whose
// branches carry infinitely many odd-odd elements, and their count is the
// rank r of the recurrence scheme.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pelltri/pellcore.hpp"

namespace pelltri {

struct XiT {
    Int xi, t;
};

bool operator==(const XiT& a, const XiT& b);

// Result of the parity filter: kept branch heads (rank = kept.size())
// and the discarded ones (they generate no odd-odd elements).
struct ParityFiltered {
    std::vector<GenPair> kept;
    std::vector<GenPair> discarded;
    int rank() const { return static_cast<int>(kept.size()); }
};

// Per-k constants tying the Pell fundamentals to the recurrences:
// kappa = t_r + t_{r-1}, gamma = t_{r-1}*t_r, delta = t_r - t_{r-1},
// and the automorphism power used to step branches (kappa = m.x - 1,
// delta = m.y).
struct RankData {
    Int k;
    int r;
    std::size_t rho;
    Int kappa, gamma, delta;
    PellPair multiplier;
};

enum class Method { ClosedForm, Recurrence1, Recurrence2, Chebyshev };

struct TriSolution {
    Int k, t, xi, tri_t, tri_xi;
    int branch;  // 1..r, ordered by the branch's first positive t
    long step;   // 0-based index along the branch
};

struct CheckResult {
    std::string name;
    bool pass;
    bool informational;  // expected-to-fail variants, not counted as failures
    std::string detail;
};

struct RecurrenceReport {
    Int k;
    RankData data;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

Int triangular(const Int& n);

// Inverse of triangular via the 8m+1 square test; empty when m is not
// a triangular number.
std::optional<Int> as_triangular_index(const Int& m);

GenPair to_pell(const Int& xi, const Int& t);

// ((X-1)/2, (Y-1)/2); throws ParityError unless both X and Y are odd.
XiT from_pell(const GenPair& p);

// Keeps: both-odd heads always; odd-X/even-Y heads only when x_f and y_f are
// both odd (then k is even and one fund-step makes the branch odd-odd);
// even-even heads never.
ParityFiltered parity_filter(const GenFundamentalSet& gens, const Int& k, const PellPair& fund);

// fund itself when stepping preserves odd Y on kept branches, else fund^2
// (the case x_f, y_f both odd).
PellPair effective_multiplier(const Int& k, const PellPair& fund);

// The first r positive solutions (xi_i, t_i), strictly increasing in t;
// one per kept branch. Throws SquareKError for square or k < 2.
std::vector<XiT> first_solutions(const Int& k);

// First `count` solutions with t > 0 merged across all r branches in
// strictly increasing t. All four methods produce identical lists.
std::vector<TriSolution> enumerate_solutions(const Int& k, std::size_t count,
                                             Method method = Method::Recurrence2);

RankData rank_data(const Int& k);

// Checks, for n in [2r, depth]:
//   t_n  = 2(kappa+1) t_{n-r}  - t_{n-2r}  + kappa        (same for xi)
//   T_{t_n}  = (4(kappa+1)^2 - 2) T_{t_{n-r}}  - T_{t_{n-2r}}  + (T_kappa - gamma)
//   T_{xi_n} = (4(kappa+1)^2 - 2) T_{xi_{n-r}} - T_{xi_{n-2r}} + k(T_kappa - gamma)
// plus the ratio identity (t_{2r} - t_{r-1})/t_r = 2*kappa + 3 and the
// constant identities; the rejected variant k*delta^2 = kappa^2 + kappa is
// reported informationally (it fails for every k, the consistent form has 2*kappa).
RecurrenceReport verify_recurrences(const Int& k, std::size_t depth);

const char* method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

}  // namespace pelltri
