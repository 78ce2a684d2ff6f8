#pragma once

// Exact solvers for the simple Pell equation x^2 - D*y^2 = 1 and the
// generalized equation X^2 - D*Y^2 = N: continued-fraction expansion of
// sqrt(D), fundamental solutions, branch stepping in all four forms
// (automorphism product, first/second order recurrences, Chebyshev).
// Everything is arbitrary-precision integer arithmetic; no floating point.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "pelltri/errors.hpp"

namespace pelltri {

using Int = mpz_class;

// Continued fraction of sqrt(D): [a0; period...], period ending at 2*a0.
struct CFExpansion {
    Int D;
    Int a0;
    std::vector<Int> period;
};

// Convergent p_i/q_i of a continued fraction (index -2 and -1 are the seeds).
struct Convergent {
    Int p;
    Int q;
    long index;
};

// A solution of x^2 - D*y^2 = 1. The constructor rejects anything else.
struct PellPair {
    Int x, y, D;
    PellPair(Int x_, Int y_, Int D_);
};

// A solution pair of a generalized equation; the equation (D, N) is contextual.
struct GenPair {
    Int X, Y;
};

bool operator==(const GenPair& a, const GenPair& b);
bool operator!=(const GenPair& a, const GenPair& b);
bool operator<(const GenPair& a, const GenPair& b);  // by (Y, X)

// The branch-inequivalent fundamental solutions of X^2 - D*Y^2 = N.
// Empty `fundamentals` means the equation has no integer solutions.
struct GenFundamentalSet {
    Int D, N;
    std::vector<GenPair> fundamentals;
    std::size_t rho() const { return fundamentals.size(); }
};

// T_n(x) and U_{n-1}(x), exact integers from the shared recurrence
// V_n = 2x*V_{n-1} - V_{n-2}.
struct ChebyshevPair {
    long degree;
    Int first_kind;   // T_degree(x)
    Int second_kind;  // U_{degree-1}(x)
    Int argument;
};

// k = c^2 * kprime with kprime square-free.
struct SquareFreeSplit {
    Int k, c, kprime;
};

// Floor of sqrt(n), n >= 0.
Int isqrt(const Int& n);

bool is_perfect_square(const Int& n);

// Continued fraction of sqrt(D); throws PerfectSquareError when D = m^2.
// The period terminates at the partial quotient equal to 2*a0.
CFExpansion cf_sqrt(const Int& D);

// First `count` partial quotients a_1..a_count of sqrt(D), computed by the
// plain (P,Q) walk without stopping at the period end. Test hook for the
// purely-periodic-tail invariant.
std::vector<Int> cf_terms(const Int& D, std::size_t count);

// Least solution with x > 1 of x^2 - D*y^2 = 1, from the CF convergents:
// period length L gives (p_{L-1}, q_{L-1}) for even L, (p_{2L-1}, q_{2L-1})
// for odd L.
PellPair simple_fundamental(const Int& D);

// n-th power of the fundamental: n=0 -> (1,0), n=1 -> fund. Binary powering
// on (a, b) representing a + b*sqrt(D).
PellPair nth_simple_solution(const PellPair& fund, unsigned long n);

// One step along a branch: (X, Y) * (x_f + sqrt(D)*y_f).
GenPair step_branch(const GenPair& cur, const PellPair& fund);

// Inverse step: (X, Y) * (x_f - sqrt(D)*y_f).
GenPair step_branch_back(const GenPair& cur, const PellPair& fund);

// Next element from the previous two: (2*x_f*X_{n-1} - X_{n-2}, same in Y).
GenPair step_branch_second_order(const GenPair& prev, const GenPair& prev2, const Int& xf);

// (X, Y) * (p.x + sqrt(D)*p.y) for an arbitrary automorphism power p.
GenPair apply_automorphism(const GenPair& g, const PellPair& p);

// The minimum-|Y| element of the orbit of p under the fundamental
// automorphism, sign-normalized. Two solutions are branch-equivalent iff
// their canonical minima coincide.
GenPair branch_minimum(GenPair p, const PellPair& fund);

bool branch_equivalent(const GenPair& a, const GenPair& b, const PellPair& fund);

// All branch-inequivalent fundamentals of X^2 - D*Y^2 = N with Y >= 0,
// both signs of X listed when they head distinct branches. Picks the scan
// route when its bound is small, the CF route otherwise; both produce the
// canonical minimum-|Y| representative per class.
GenFundamentalSet generalized_fundamentals(const Int& D, const Int& N);

// Exhaustive Y-scan: for N < 0 every class has a representative with
// 1 <= Y <= sqrt(|N|*(x_f+1)/(2D)). Infeasible when x_f is huge.
GenFundamentalSet generalized_fundamentals_scan(const Int& D, const Int& N);

// Classical reduction: for each f with f^2 | N and each z^2 = D (mod |N/f^2|),
// walk the continued fraction of (z + sqrt(D))/|N/f^2| until |Q| = 1. Runtime
// depends on the CF period, not on the size of the fundamental solution.
GenFundamentalSet generalized_fundamentals_cf(const Int& D, const Int& N);

// Exact T_degree(x) and U_{degree-1}(x); degree >= -1.
ChebyshevPair chebyshev_eval(long degree, const Int& x);

// Split k = c^2 * kprime by trial division, kprime square-free.
SquareFreeSplit squarefree_split(const Int& k);

}  // namespace pelltri
