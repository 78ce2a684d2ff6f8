#include "pelltri/oracle.hpp"

#include <stdexcept>

namespace pelltri {

bool operator==(const BruteSolution& a, const BruteSolution& b) {
    return a.t == b.t && a.xi == b.xi;
}

std::vector<BruteSolution> brute_solutions(const Int& k, const Int& t_max) {
    if (k < 2) throw std::invalid_argument("brute_solutions: k must be >= 2");
    if (t_max < 1) throw std::invalid_argument("brute_solutions: t_max must be >= 1");
    std::vector<BruteSolution> out;
    Int m, s, root;
    for (Int t = 1; t <= t_max; ++t) {
        // m = k * T_t; triangular iff 8m+1 is a perfect square.
        m = k * t * (t + 1) / 2;
        s = 8 * m + 1;
        if (mpz_perfect_square_p(s.get_mpz_t()) == 0) continue;
        mpz_sqrt(root.get_mpz_t(), s.get_mpz_t());
        out.push_back({t, Int((root - 1) / 2)});
    }
    return out;
}

std::vector<GenPair> brute_generalized_fundamentals(const Int& D, const Int& N,
                                                    const Int& y_bound) {
    PellPair fund = simple_fundamental(D);
    Int required;
    if (N < 0) {
        Int absN = -N;
        required = isqrt(absN * (fund.x + 1) / (2 * D)) + 1;
    } else {
        required = isqrt(N * (fund.x - 1) / (2 * D)) + 1;
    }
    if (y_bound < required) {
        throw std::invalid_argument("brute_generalized_fundamentals: y_bound " +
                                    y_bound.get_str() + " below the class bound " +
                                    required.get_str());
    }

    std::vector<GenPair> reps;
    auto consider = [&](GenPair cand) {
        for (const GenPair& r : reps) {
            if (branch_equivalent(cand, r, fund)) return;
        }
        reps.push_back(cand);
    };

    Int sq, X;
    for (Int Y = 1; Y <= y_bound; ++Y) {
        sq = N + D * Y * Y;
        if (sq < 0) continue;
        if (mpz_perfect_square_p(sq.get_mpz_t()) == 0) continue;
        mpz_sqrt(X.get_mpz_t(), sq.get_mpz_t());
        consider({X, Y});
        if (X > 0) consider({-X, Y});
    }
    return reps;
}

}  // namespace pelltri
