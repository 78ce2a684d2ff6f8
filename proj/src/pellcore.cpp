#include "pelltri/pellcore.hpp"

#include <stdexcept>
#include <utility>

namespace pelltri {

namespace {

bool odd(const Int& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

}  // namespace

PellPair::PellPair(Int x_, Int y_, Int D_) : x(std::move(x_)), y(std::move(y_)), D(std::move(D_)) {
    Int lhs = x * x - D * y * y;
    if (lhs != 1) {
        throw std::logic_error("PellPair invariant violated: " + x.get_str() + "^2 - " +
                               D.get_str() + "*" + y.get_str() + "^2 != 1");
    }
}

bool operator==(const GenPair& a, const GenPair& b) { return a.X == b.X && a.Y == b.Y; }
bool operator!=(const GenPair& a, const GenPair& b) { return !(a == b); }
bool operator<(const GenPair& a, const GenPair& b) {
    if (a.Y != b.Y) return a.Y < b.Y;
    return a.X < b.X;
}

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative input");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

CFExpansion cf_sqrt(const Int& D) {
    if (D <= 0) throw std::invalid_argument("cf_sqrt: D must be positive");
    Int a0 = isqrt(D);
    if (a0 * a0 == D) {
        throw PerfectSquareError("cf_sqrt: D = " + D.get_str() + " is a perfect square");
    }
    CFExpansion cf;
    cf.D = D;
    cf.a0 = a0;
    Int two_a0 = 2 * a0;
    // (P,Q) walk: a_{i+1} = floor((a0 + P_{i+1}) / Q_{i+1}).
    Int P = 0, Q = 1, a = a0;
    for (;;) {
        P = a * Q - P;
        Q = (D - P * P) / Q;
        a = (a0 + P) / Q;
        cf.period.push_back(a);
        if (a == two_a0) break;
    }
    return cf;
}

std::vector<Int> cf_terms(const Int& D, std::size_t count) {
    Int a0 = isqrt(D);
    if (a0 * a0 == D) {
        throw PerfectSquareError("cf_terms: D = " + D.get_str() + " is a perfect square");
    }
    std::vector<Int> terms;
    terms.reserve(count);
    Int P = 0, Q = 1, a = a0;
    for (std::size_t i = 0; i < count; ++i) {
        P = a * Q - P;
        Q = (D - P * P) / Q;
        a = (a0 + P) / Q;
        terms.push_back(a);
    }
    return terms;
}

PellPair simple_fundamental(const Int& D) {
    CFExpansion cf = cf_sqrt(D);
    std::size_t L = cf.period.size();
    std::size_t last = (L % 2 == 0) ? (L - 1) : (2 * L - 1);
    Int p_prev2 = 0, p_prev = 1;  // p_{-2}, p_{-1}
    Int q_prev2 = 1, q_prev = 0;  // q_{-2}, q_{-1}
    Int p, q;
    for (std::size_t i = 0; i <= last; ++i) {
        const Int& ai = (i == 0) ? cf.a0 : cf.period[(i - 1) % L];
        p = ai * p_prev + p_prev2;
        q = ai * q_prev + q_prev2;
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
    }
    return PellPair(p, q, D);
}

PellPair nth_simple_solution(const PellPair& fund, unsigned long n) {
    // Square-and-multiply on (a, b) with (a1,b1)*(a2,b2) =
    // (a1*a2 + D*b1*b2, a1*b2 + b1*a2).
    Int ra = 1, rb = 0;
    Int ba = fund.x, bb = fund.y;
    unsigned long e = n;
    while (e > 0) {
        if (e & 1UL) {
            Int na = ra * ba + fund.D * rb * bb;
            Int nb = ra * bb + rb * ba;
            ra = na;
            rb = nb;
        }
        e >>= 1;
        if (e == 0) break;
        Int sa = ba * ba + fund.D * bb * bb;
        Int sb = 2 * ba * bb;
        ba = sa;
        bb = sb;
    }
    return PellPair(ra, rb, fund.D);
}

GenPair step_branch(const GenPair& cur, const PellPair& fund) {
    return {fund.x * cur.X + fund.D * fund.y * cur.Y, fund.x * cur.Y + fund.y * cur.X};
}

GenPair step_branch_back(const GenPair& cur, const PellPair& fund) {
    return {fund.x * cur.X - fund.D * fund.y * cur.Y, fund.x * cur.Y - fund.y * cur.X};
}

GenPair step_branch_second_order(const GenPair& prev, const GenPair& prev2, const Int& xf) {
    return {2 * xf * prev.X - prev2.X, 2 * xf * prev.Y - prev2.Y};
}

GenPair apply_automorphism(const GenPair& g, const PellPair& p) {
    return {p.x * g.X + p.D * p.y * g.Y, p.x * g.Y + p.y * g.X};
}

namespace {

// (X, Y) and (-X, -Y) are the same solution up to global sign; list the
// Y >= 0 one.
GenPair sign_normalized(GenPair p) {
    if (p.Y < 0 || (p.Y == 0 && p.X < 0)) {
        p.X = -p.X;
        p.Y = -p.Y;
    }
    return p;
}

}  // namespace

GenPair branch_minimum(GenPair p, const PellPair& fund) {
    // |Y| is unimodal along an orbit (sum/difference of two exponentials),
    // so greedy descent reaches the minimum; a plateau has at most 2 points.
    Int absY = abs(p.Y);
    for (;;) {
        GenPair down = step_branch_back(p, fund);
        if (abs(down.Y) < absY) {
            p = std::move(down);
            absY = abs(p.Y);
            continue;
        }
        GenPair up = step_branch(p, fund);
        if (abs(up.Y) < absY) {
            p = std::move(up);
            absY = abs(p.Y);
            continue;
        }
        // At the minimum; resolve a two-point plateau after sign
        // normalization, preferring the X > 0 representative.
        GenPair best = sign_normalized(p);
        if (abs(down.Y) == absY) {
            GenPair alt = sign_normalized(std::move(down));
            if (alt.X > best.X) best = std::move(alt);
        }
        if (abs(up.Y) == absY) {
            GenPair alt = sign_normalized(std::move(up));
            if (alt.X > best.X) best = std::move(alt);
        }
        return best;
    }
}

bool branch_equivalent(const GenPair& a, const GenPair& b, const PellPair& fund) {
    if (a == b) return true;
    return branch_minimum(a, fund) == branch_minimum(b, fund);
}

namespace {

Int class_bound(const Int& D, const Int& N, const PellPair& fund) {
    if (N < 0) {
        Int absN = -N;
        return isqrt(absN * (fund.x + 1) / (2 * D)) + 1;
    }
    return isqrt(N * (fund.x - 1) / (2 * D)) + 1;
}

// Sort as the scan emits: ascending Y, positive X before negative.
void finish_set(GenFundamentalSet& set) {
    std::sort(set.fundamentals.begin(), set.fundamentals.end(),
              [](const GenPair& a, const GenPair& b) {
                  if (a.Y != b.Y) return a.Y < b.Y;
                  return a.X > b.X;
              });
}

// floor((P + sqrt(D))/Q) for irrational sqrt(D), a0 = isqrt(D).
Int cf_floor(const Int& P, const Int& Q, const Int& a0) {
    Int num = P + a0;  // P + sqrt(D) lies in (num, num+1)
    Int q;
    if (Q > 0) {
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        return q;
    }
    Int absQ = -Q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), absQ.get_mpz_t());
    return -q - 1;
}

}  // namespace

GenFundamentalSet generalized_fundamentals_scan(const Int& D, const Int& N) {
    if (N == 0) throw std::invalid_argument("generalized_fundamentals: N must be nonzero");
    PellPair fund = simple_fundamental(D);
    Int bound = class_bound(D, N, fund);

    GenFundamentalSet set;
    set.D = D;
    set.N = N;
    auto consider = [&](GenPair cand) {
        for (const GenPair& r : set.fundamentals) {
            if (branch_equivalent(cand, r, fund)) return;
        }
        set.fundamentals.push_back(std::move(cand));
    };

    if (N > 0 && is_perfect_square(N)) consider({isqrt(N), 0});
    for (Int Y = 1; Y <= bound; ++Y) {
        Int t = N + D * Y * Y;
        if (t < 0) continue;
        if (!is_perfect_square(t)) continue;
        Int X = isqrt(t);
        consider({X, Y});
        if (X > 0) consider({-X, Y});
    }
    finish_set(set);
    return set;
}

GenFundamentalSet generalized_fundamentals_cf(const Int& D, const Int& N) {
    if (N == 0) throw std::invalid_argument("generalized_fundamentals: N must be nonzero");
    PellPair fund = simple_fundamental(D);
    Int a0 = isqrt(D);

    // Minimal solution of t^2 - D*u^2 = -1, when the CF period is odd.
    bool has_negative = false;
    Int neg_t, neg_u;
    {
        CFExpansion cf = cf_sqrt(D);
        if (cf.period.size() % 2 == 1) {
            Int p_prev2 = 0, p_prev = 1, q_prev2 = 1, q_prev = 0, p, q;
            for (std::size_t i = 0; i < cf.period.size(); ++i) {
                const Int& ai = (i == 0) ? cf.a0 : cf.period[i - 1];
                p = ai * p_prev + p_prev2;
                q = ai * q_prev + q_prev2;
                p_prev2 = p_prev;
                p_prev = p;
                q_prev2 = q_prev;
                q_prev = q;
            }
            has_negative = true;
            neg_t = p_prev;  // convergent at index L-1
            neg_u = q_prev;
        }
    }

    std::vector<GenPair> found;
    auto push_candidate = [&](Int X, Int Y) {
        Int residue = X * X - D * Y * Y;
        if (residue != N) {
            throw std::logic_error("generalized_fundamentals_cf: candidate off the conic");
        }
        GenPair canon = branch_minimum({std::move(X), std::move(Y)}, fund);
        for (const GenPair& g : found) {
            if (g == canon) return;
        }
        found.push_back(std::move(canon));
    };

    Int absN = abs(N);
    for (Int f = 1; f * f <= absN; ++f) {
        if (absN % (f * f) != 0) continue;
        Int m = N / (f * f);
        Int absM = abs(m);
        for (Int z = 0; z < absM; ++z) {
            if ((z * z - D) % absM != 0) continue;
            // Centered representative; both signs of z index distinct classes.
            Int zc = (2 * z > absM) ? Int(z - absM) : z;

            // Walk the CF of (zc + sqrt(D))/|m|; G_i^2 - D*B_i^2 =
            // (-1)^(i+1) * Q_{i+1} * Q_0.
            Int P = zc, Q = absM;
            Int B_prev = 1, B_cur = 0;   // B_{-2}, B_{-1}
            Int G_prev = -zc, G_cur = absM;  // G_{-2}, G_{-1}
            std::vector<std::pair<Int, Int>> seen;
            for (long i = 0;; ++i) {
                Int a = cf_floor(P, Q, a0);
                Int B_next = a * B_cur + B_prev;
                Int G_next = a * G_cur + G_prev;
                B_prev = B_cur;
                B_cur = B_next;
                G_prev = G_cur;
                G_cur = G_next;
                P = a * Q - P;
                Q = (D - P * P) / Q;

                if (Q == 1 || Q == -1) {
                    // value of (G_cur, B_cur) is (-1)^(i+1) * Q_{i+1} * |m|
                    Int value = Q * absM;
                    if ((i + 1) % 2 == 1) value = -value;
                    if (value == m) {
                        push_candidate(G_cur * f, B_cur * f);
                    } else if (has_negative) {
                        // multiply by the -1 unit to flip the sign
                        Int X = G_cur * neg_t + D * B_cur * neg_u;
                        Int Y = G_cur * neg_u + B_cur * neg_t;
                        push_candidate(X * f, Y * f);
                    }
                }
                bool repeated = false;
                for (const auto& pq : seen) {
                    if (pq.first == P && pq.second == Q) {
                        repeated = true;
                        break;
                    }
                }
                if (repeated) break;
                seen.emplace_back(P, Q);
            }
        }
    }

    GenFundamentalSet set;
    set.D = D;
    set.N = N;
    // Normalize to Y >= 0 representatives (canonical minima may carry Y > 0
    // already for N < 0; X sign distinguishes mirror classes).
    set.fundamentals = std::move(found);
    finish_set(set);
    return set;
}

GenFundamentalSet generalized_fundamentals(const Int& D, const Int& N) {
    if (N == 0) throw std::invalid_argument("generalized_fundamentals: N must be nonzero");
    PellPair fund = simple_fundamental(D);
    if (class_bound(D, N, fund) <= 1000000) return generalized_fundamentals_scan(D, N);
    return generalized_fundamentals_cf(D, N);
}

ChebyshevPair chebyshev_eval(long degree, const Int& x) {
    if (degree < -1) throw std::invalid_argument("chebyshev_eval: degree must be >= -1");
    // T_{-1} = x, T_0 = 1, T_1 = x; U_{-2} = -1, U_{-1} = 0, U_0 = 1.
    if (degree == -1) return {degree, x, Int(-1), x};
    Int t_prev = x, t_cur = 1;  // T_{-1}, T_0
    Int u_prev = -1, u_cur = 0; // U_{-2}, U_{-1}
    Int two_x = 2 * x;
    for (long i = 0; i < degree; ++i) {
        Int t_next = two_x * t_cur - t_prev;
        Int u_next = two_x * u_cur - u_prev;
        t_prev = t_cur;
        t_cur = t_next;
        u_prev = u_cur;
        u_cur = u_next;
    }
    return {degree, t_cur, u_cur, x};
}

SquareFreeSplit squarefree_split(const Int& k) {
    if (k < 1) throw std::invalid_argument("squarefree_split: k must be positive");
    Int rem = k, c = 1, kprime = 1;
    Int p = 2;
    while (p * p <= rem) {
        if (rem % p == 0) {
            unsigned long e = 0;
            while (rem % p == 0) {
                rem /= p;
                ++e;
            }
            for (unsigned long i = 0; i + 1 < e; i += 2) c *= p;
            if (e % 2 == 1) kprime *= p;
        }
        p += (p == 2) ? 1 : 2;
    }
    kprime *= rem;  // leftover is 1 or prime
    return {k, c, kprime};
}

}  // namespace pelltri
