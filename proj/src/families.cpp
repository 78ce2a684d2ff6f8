#include "pelltri/families.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "pelltri/trimult.hpp"

namespace pelltri {

Int Poly::eval(const Int& s) const {
    mpq_class acc = 0;
    mpq_class spow = 1;
    mpq_class sq(s);
    for (const mpq_class& c : coeff) {
        acc += c * spow;
        spow *= sq;
    }
    if (acc.get_den() != 1) {
        throw std::logic_error("Poly::eval: non-integer value at s = " + s.get_str());
    }
    return acc.get_num();
}

std::string Poly::text() const {
    std::ostringstream os;
    bool firstTerm = true;
    for (std::size_t d = coeff.size(); d-- > 0;) {
        const mpq_class& c = coeff[d];
        if (c == 0) continue;
        if (!firstTerm) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        mpq_class a = abs(c);
        bool unitCoeff = (a == 1) && d > 0;
        if (!unitCoeff) {
            if (a.get_den() == 1) os << a.get_num().get_str();
            else os << "(" << a.get_num().get_str() << "/" << a.get_den().get_str() << ")";
        }
        if (d > 0) {
            if (!unitCoeff) os << "*";
            os << "s";
            if (d > 1) os << "^" << d;
        }
        firstTerm = false;
    }
    if (firstTerm) os << "0";
    return os.str();
}

bool Congruence::admits(const Int& s) const {
    if (s < s_min) return false;
    Int rem = s % mod;
    long r = rem.get_si();
    for (long v : residues) {
        if (r == v) return true;
    }
    return false;
}

bool RExpect::matches(int r) const {
    switch (cmp) {
        case Cmp::Eq: return r == value;
        case Cmp::Ge: return r >= value;
        case Cmp::Gt: return r > value;
    }
    return false;
}

std::string RExpect::text() const {
    switch (cmp) {
        case Cmp::Eq: return "r = " + std::to_string(value);
        case Cmp::Ge: return "r >= " + std::to_string(value);
        case Cmp::Gt: return "r > " + std::to_string(value);
    }
    return "?";
}

namespace {

using Q = mpq_class;

Poly poly(std::vector<Q> c) { return Poly{std::move(c)}; }

FamilyRule make_rule(std::string name, std::string k_text, Poly k, Congruence cond, RExpect r,
                     std::optional<std::pair<Poly, Poly>> simple,
                     std::optional<std::pair<Poly, Poly>> gen, std::vector<long> exceptions = {},
                     char footnote = 0, bool open_ended = false, std::string note = {}) {
    FamilyRule rule;
    rule.name = std::move(name);
    rule.k_text = std::move(k_text);
    rule.k_of_s = std::move(k);
    rule.cond = cond;
    rule.r_expected = r;
    rule.simple = std::move(simple);
    rule.gen = std::move(gen);
    rule.exceptions = std::move(exceptions);
    rule.exceptions_open_ended = open_ended;
    rule.footnote = footnote;
    rule.note = std::move(note);
    return rule;
}

std::vector<FamilyRule> build_catalog() {
    std::vector<FamilyRule> rules;
    const Congruence any{1, {0}, 1};
    const Congruence even{2, {0}, 1};
    const Congruence oddc{2, {1}, 1};
    using C = RExpect::Cmp;

    // k = s^2 + 1
    rules.push_back(make_rule("s2+1-even", "s^2+1", poly({1, 0, 1}), even, {C::Eq, 2},
                              {{poly({1, 0, 2}), poly({0, 2})}}, std::nullopt));
    rules.push_back(make_rule("s2+1-odd", "s^2+1", poly({1, 0, 1}), oddc, {C::Eq, 3},
                              {{poly({1, 0, 2}), poly({0, 2})}},
                              {{poly({0, 0, 1}), poly({0, 1})}}));
    // k = s^2 + 2
    rules.push_back(make_rule("s2+2", "s^2+2", poly({2, 0, 1}), any, {C::Eq, 2},
                              {{poly({1, 0, 1}), poly({0, 1})}}, std::nullopt, {51, 66}, 'a'));
    // k = s^2 + 4
    rules.push_back(make_rule("s2+4-even", "s^2+4", poly({4, 0, 1}), even, {C::Eq, 2},
                              {{poly({1, 0, Q(1, 2)}), poly({0, Q(1, 2)})}}, std::nullopt, {40},
                              'b'));
    rules.push_back(make_rule(
        "s2+4-s1mod4", "s^2+4", poly({4, 0, 1}), {4, {1}, 1}, {C::Eq, 4},
        {{poly({1, 0, Q(9, 2), 0, 3, 0, Q(1, 2)}), poly({0, Q(3, 2), 0, 2, 0, Q(1, 2)})}},
        {{poly({-1, 2, Q(-1, 2), Q(1, 2)}), poly({1, Q(-1, 2), Q(1, 2)})}}, {85}, 'c'));
    rules.push_back(make_rule(
        "s2+4-s3mod4", "s^2+4", poly({4, 0, 1}), {4, {3}, 1}, {C::Eq, 4},
        {{poly({1, 0, Q(9, 2), 0, 3, 0, Q(1, 2)}), poly({0, Q(3, 2), 0, 2, 0, Q(1, 2)})}},
        {{poly({1, 2, Q(1, 2), Q(1, 2)}), poly({1, Q(1, 2), Q(1, 2)})}}));
    // k = s^2 + 8
    rules.push_back(make_rule("s2+8-s0mod4", "s^2+8", poly({8, 0, 1}), {4, {0}, 1}, {C::Eq, 2},
                              {{poly({1, 0, Q(1, 4)}), poly({0, Q(1, 4)})}}, std::nullopt));
    rules.push_back(make_rule("s2+8-s2mod4", "s^2+8", poly({8, 0, 1}), {4, {2}, 1}, {C::Eq, 2},
                              {{poly({1, 0, 1, 0, Q(1, 8)}), poly({0, Q(1, 2), 0, Q(1, 8)})}},
                              std::nullopt));
    // k = s^2 + s
    rules.push_back(make_rule("s2+s", "s^2+s", poly({0, 1, 1}), any, {C::Eq, 2},
                              {{poly({1, 2}), poly({2})}}, std::nullopt));
    // k = s^2 +- 2s/sigma: sigma-parametric templates, instantiated on use.
    {
        FamilyRule plus = make_rule("s2+2s/sigma", "s^2+2s/sigma", Poly{}, any, {C::Ge, 2},
                                    std::nullopt, std::nullopt, {}, 'd');
        plus.sigma_parametric = true;
        rules.push_back(plus);
        FamilyRule minus = make_rule("s2-2s/sigma", "s^2-2s/sigma", Poly{}, any, {C::Ge, 2},
                                     std::nullopt, std::nullopt, {}, 'd');
        minus.sigma_parametric = true;
        minus.sigma_minus = true;
        rules.push_back(minus);
    }
    // k = s^2 + s - 1
    rules.push_back(make_rule("s2+s-1", "s^2+s-1", poly({-1, 1, 1}), any, {C::Ge, 2}, std::nullopt,
                              {{poly({-1, 2, 2}), poly({1, 2})}}, {5, 11, 55}, 'e',
                              /*open_ended=*/true));
    // k = s^2 + s - 2
    rules.push_back(make_rule("s2+s-2-s0mod3", "s^2+s-2", poly({-2, 1, 1}), {3, {0}, 1},
                              {C::Gt, 4}, std::nullopt,
                              {{poly({-1, Q(4, 3), Q(2, 3)}), poly({1, Q(2, 3)})}}, {40}, 'f'));
    rules.push_back(make_rule("s2+s-2-s1mod3", "s^2+s-2", poly({-2, 1, 1}), {3, {1}, 1},
                              {C::Eq, 2}, std::nullopt, std::nullopt));
    rules.push_back(make_rule("s2+s-2-s2mod3", "s^2+s-2", poly({-2, 1, 1}), {3, {2}, 1},
                              {C::Eq, 4}, std::nullopt,
                              {{poly({Q(-5, 3), 0, Q(2, 3)}), poly({Q(-1, 3), Q(2, 3)})}}));
    // k = s^2 + s + 1
    rules.push_back(make_rule(
        "s2+s+1-s1mod3", "s^2+s+1", poly({1, 1, 1}), {3, {1}, 1}, {C::Eq, 4},
        {{poly({Q(5, 3), Q(8, 3), Q(8, 3)}), poly({Q(4, 3), Q(8, 3)})}},
        {{poly({Q(-1, 3), Q(2, 3), Q(2, 3)}), poly({Q(1, 3), Q(2, 3)})}}));
    rules.push_back(make_rule("s2+s+1-s02mod3", "s^2+s+1", poly({1, 1, 1}), {3, {0, 2}, 1},
                              {C::Ge, 4}, std::nullopt, {{poly({1, 2, 2}), poly({1, 2})}}));
    // k = s^2 + 2s
    rules.push_back(make_rule("s2+2s", "s^2+2s", poly({0, 2, 1}), any, {C::Eq, 2},
                              {{poly({1, 1}), poly({1})}}, std::nullopt));
    // k = s^2 + 2s - 1
    rules.push_back(make_rule("s2+2s-1", "s^2+2s-1", poly({-1, 2, 1}), any, {C::Eq, 2},
                              {{poly({0, 2, 1}), poly({1, 1})}}, std::nullopt));
    // k = s^2 + 2s - 2
    rules.push_back(make_rule("s2+2s-2", "s^2+2s-2", poly({-2, 2, 1}), {3, {2}, 1}, {C::Eq, 2},
                              {{poly({Q(-1, 3), Q(4, 3), Q(2, 3)}), poly({Q(2, 3), Q(2, 3)})}},
                              std::nullopt, {78}, 'g'));
    // k = s^2 + 2s - 3
    rules.push_back(make_rule("s2+2s-3-s0mod4", "s^2+2s-3", poly({-3, 2, 1}), {4, {0}, 1},
                              {C::Eq, 4},
                              {{poly({-1, 0, Q(3, 2), Q(1, 2)}), poly({0, 1, Q(1, 2)})}},
                              {{poly({-1, Q(3, 2), Q(1, 2)}), poly({1, Q(1, 2)})}}));
    rules.push_back(make_rule("s2+2s-3-s2mod4", "s^2+2s-3", poly({-3, 2, 1}), {4, {2}, 1},
                              {C::Eq, 4},
                              {{poly({-1, 0, Q(3, 2), Q(1, 2)}), poly({0, 1, Q(1, 2)})}},
                              {{poly({-2, Q(1, 2), Q(1, 2)}), poly({0, Q(1, 2)})}}, {5}, 'h'));
    rules.push_back(make_rule("s2+2s-3-odd", "s^2+2s-3", poly({-3, 2, 1}), oddc, {C::Eq, 2},
                              {{poly({Q(-1, 2), 1, Q(1, 2)}), poly({Q(1, 2), Q(1, 2)})}},
                              std::nullopt, {96}, 'i'));
    // k = s^2 + 2s - 7
    rules.push_back(make_rule("s2+2s-7-s3mod4", "s^2+2s-7", poly({-7, 2, 1}), {4, {3}, 1},
                              {C::Eq, 2},
                              {{poly({Q(-3, 4), Q(1, 2), Q(1, 4)}), poly({Q(1, 4), Q(1, 4)})}},
                              std::nullopt, {136}, 'j'));
    rules.push_back(make_rule(
        "s2+2s-7-s1mod4", "s^2+2s-7", poly({-7, 2, 1}), {4, {1}, 1}, {C::Eq, 4},
        {{poly({Q(1, 8), Q(-3, 2), Q(-1, 4), Q(1, 2), Q(1, 8)}),
          poly({Q(-3, 8), Q(-1, 8), Q(3, 8), Q(1, 8)})}},
        {{poly({Q(-5, 2), 1, Q(1, 2)}), poly({Q(1, 2), Q(1, 2)})}}, {}, 0, false,
        "generalized X uses the identity-correct (s^2+2s-5)/2 = (k+2)/2; the tabulated "
        "(2s^2+3s-5)/4 agrees only at s=5 and fails its Pell identity for larger s "
        "(at s=9, k=92 it gives 46 where the true head is 47)"));
    // k = s^2 + (3s+1)/2
    rules.push_back(make_rule("s2+3s+1over2", "s^2+(3s+1)/2", poly({Q(1, 2), Q(3, 2), 1}), oddc,
                              {C::Eq, 2}, {{poly({3, 4}), poly({4})}}, std::nullopt));
    return rules;
}

bool excepted_k(const FamilyRule& rule, const Int& k) {
    for (long e : rule.exceptions) {
        if (k == e) return true;
    }
    if (rule.sigma > 0 && rule.sigma % 2 == 0 && rule.sigma_minus) {
        long half = rule.sigma / 2;
        // The tabulated exclusion reads sigma^2-1; computation shows the
        // excluded k are (sigma/2)^2-1, reached at s = sigma/2, where the
        // prediction is the square of the true fundamental. Honor both.
        if (k == Int(half) * half - 1) return true;
        if (k == Int(rule.sigma) * rule.sigma - 1) return true;
    }
    return false;
}

}  // namespace

const std::vector<FamilyRule>& family_catalog() {
    static const std::vector<FamilyRule> catalog = build_catalog();
    return catalog;
}

FamilyRule instantiate_sigma(const FamilyRule& tmpl, long sigma) {
    if (!tmpl.sigma_parametric) throw std::invalid_argument("instantiate_sigma: not a template");
    if (sigma < 1) throw std::invalid_argument("instantiate_sigma: sigma must be >= 1");
    FamilyRule rule = tmpl;
    rule.sigma = sigma;
    rule.sigma_parametric = false;
    Q slope(2, sigma);
    slope.canonicalize();
    if (rule.sigma_minus) slope = -slope;
    rule.k_of_s = poly({0, slope, 1});
    long one = rule.sigma_minus ? -1 : 1;
    rule.simple = {{poly({Q(one), Q(sigma)}), poly({Q(sigma)})}};
    rule.gen = std::nullopt;  // no tabulated pattern beyond (+-1,1)
    if (sigma % 2 == 1) {
        rule.cond = {sigma, {0}, 1};
        rule.footnote = 0;
    } else {
        rule.cond = {sigma / 2, {0}, 1};
        rule.footnote = 'd';
    }
    std::string sign = rule.sigma_minus ? "-" : "+";
    rule.k_text = "s^2" + sign + "2s/" + std::to_string(sigma);
    return rule;
}

bool admissible(const FamilyRule& rule, const Int& s) {
    if (rule.sigma_parametric) return false;
    if (!rule.cond.admits(s)) return false;
    Int k = rule.k_of_s.eval(s);
    if (k < 5 || is_perfect_square(k)) return false;
    return !excepted_k(rule, k);
}

Prediction predict(const FamilyRule& rule, const Int& s) {
    if (rule.sigma_parametric) {
        throw std::invalid_argument("predict: instantiate the sigma template first");
    }
    if (!rule.cond.admits(s)) {
        throw InadmissibleSError("predict: s = " + s.get_str() + " fails the condition of rule " +
                                 rule.name);
    }
    Int k = rule.k_of_s.eval(s);
    if (k < 5 || is_perfect_square(k)) {
        throw InadmissibleSError("predict: rule " + rule.name + " at s = " + s.get_str() +
                                 " gives degenerate k = " + k.get_str());
    }
    if (excepted_k(rule, k)) {
        throw InadmissibleSError("predict: k = " + k.get_str() + " is an exception of rule " +
                                 rule.name);
    }
    Prediction pred;
    pred.k = k;
    if (rule.simple) pred.simple = {{rule.simple->first.eval(s), rule.simple->second.eval(s)}};
    if (rule.gen) pred.gen = {{rule.gen->first.eval(s), rule.gen->second.eval(s)}};
    return pred;
}

std::size_t FamilyReport::passes() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
        return c.outcome == FamilyOutcome::Pass;
    }));
}
std::size_t FamilyReport::expected_exceptions() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
        return c.outcome == FamilyOutcome::ExpectedException;
    }));
}
std::size_t FamilyReport::known_discrepancies() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
        return c.outcome == FamilyOutcome::KnownDiscrepancy;
    }));
}
std::size_t FamilyReport::beyond_tables() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
        return c.outcome == FamilyOutcome::BeyondTables;
    }));
}
std::size_t FamilyReport::mismatches() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
        return c.outcome == FamilyOutcome::Mismatch;
    }));
}

const std::vector<KnownDiscrepancy>& known_discrepancies() {
    // Rank claims refuted by exact computation inside the tabulated range
    // k <= 102, where the per-k tables themselves pin the rank; every entry
    // is re-verified by the independent brute-force scan in the acceptance
    // suite. Rank-claim failures beyond the tabulated range are reported as
    // BeyondTables instead (the rank column was compiled from observations
    // over that range and does not extrapolate).
    static const std::vector<KnownDiscrepancy> list = {
        {"s2+4-s1mod4", 0, 1, 5, "r = 4", "r = 2"},
        {"s2+s+1-s02mod3", 0, 2, 7, "r >= 4 with new head (13,5)",
         "r = 2; (13,5) lies on the (-1,1) branch"},
        {"s2+s-2-s0mod3", 0, 3, 10, "r > 4", "r = 3"},
        {"s2+s-2-s0mod3", 0, 9, 88, "r > 4", "r = 4"},
    };
    return list;
}

namespace {

const KnownDiscrepancy* find_pinned(const std::string& rule, long sigma, long s) {
    for (const KnownDiscrepancy& d : known_discrepancies()) {
        if (d.rule == rule && d.sigma == sigma && d.s == s) return &d;
    }
    return nullptr;
}

}  // namespace

FamilyReport verify_family(const FamilyRule& rule, long s_max) {
    if (rule.sigma_parametric) {
        throw std::invalid_argument("verify_family: instantiate the sigma template first");
    }
    FamilyReport report;
    for (long sv = 1; sv <= s_max; ++sv) {
        Int s(sv);
        if (!rule.cond.admits(s)) continue;
        Int k = rule.k_of_s.eval(s);
        if (k < 5 || is_perfect_square(k)) continue;

        FamilyCheck chk;
        chk.rule = rule.name;
        chk.sigma = rule.sigma;
        chk.s = sv;
        chk.k = k;

        PellPair fund = simple_fundamental(k);
        GenFundamentalSet gens = generalized_fundamentals(k, Int(1 - k));
        ParityFiltered pf = parity_filter(gens, k, fund);
        chk.r_computed = pf.rank();

        std::ostringstream detail;
        bool all_ok = true;
        bool only_gen_membership_failed = true;

        if (rule.simple) {
            chk.simple_checked = true;
            Int px = rule.simple->first.eval(s);
            Int py = rule.simple->second.eval(s);
            Int residue = px * px - k * py * py;
            chk.simple_is_solution = (residue == 1);
            chk.simple_is_fundamental =
                chk.simple_is_solution && px == fund.x && py == fund.y;
            detail << "simple (" << px.get_str() << "," << py.get_str() << "): ";
            if (chk.simple_is_fundamental) {
                detail << "fundamental";
            } else if (chk.simple_is_solution) {
                detail << "solution, not the fundamental (" << fund.x.get_str() << ","
                       << fund.y.get_str() << ")";
                all_ok = false;
                only_gen_membership_failed = false;
            } else {
                detail << "NOT a solution";
                all_ok = false;
                only_gen_membership_failed = false;
            }
        }

        if (rule.gen) {
            chk.gen_checked = true;
            Int gx = rule.gen->first.eval(s);
            Int gy = rule.gen->second.eval(s);
            Int residue = gx * gx - k * gy * gy;
            chk.gen_is_solution = (residue == 1 - k);
            chk.gen_is_member = false;
            if (chk.gen_is_solution) {
                Int agx = abs(gx);
                for (const GenPair& f : gens.fundamentals) {
                    if (f.Y == gy && abs(f.X) == agx) {
                        chk.gen_is_member = true;
                        break;
                    }
                }
            }
            if (chk.simple_checked) detail << "; ";
            detail << "generalized (" << gx.get_str() << "," << gy.get_str() << "): ";
            if (chk.gen_is_member) {
                detail << "fundamental set member";
            } else if (chk.gen_is_solution) {
                detail << "solution on an existing branch, not a fundamental";
                all_ok = false;
            } else {
                detail << "NOT a solution";
                all_ok = false;
                only_gen_membership_failed = false;
            }
        }

        {
            chk.r_checked = true;
            chk.r_matches = rule.r_expected.matches(chk.r_computed);
            if (chk.simple_checked || chk.gen_checked) detail << "; ";
            detail << "rank: claimed " << rule.r_expected.text() << ", computed "
                   << chk.r_computed;
            if (!chk.r_matches) {
                all_ok = false;
                only_gen_membership_failed = false;
            }
        }

        bool only_r_failed = chk.r_checked && !chk.r_matches &&
                             (!chk.simple_checked || chk.simple_is_fundamental) &&
                             (!chk.gen_checked || chk.gen_is_member);
        if (all_ok) {
            chk.outcome = FamilyOutcome::Pass;
        } else if (excepted_k(rule, k)) {
            chk.outcome = FamilyOutcome::ExpectedException;
            detail << " [footnoted exception]";
        } else if (rule.exceptions_open_ended && only_gen_membership_failed) {
            chk.outcome = FamilyOutcome::ExpectedException;
            detail << " [open-ended footnote, resolved by computation]";
        } else if (const KnownDiscrepancy* pin = find_pinned(rule.name, rule.sigma, sv)) {
            chk.outcome = FamilyOutcome::KnownDiscrepancy;
            detail << " [known table discrepancy: claimed " << pin->claimed << ", computed "
                   << pin->computed << "]";
        } else if (only_r_failed && k > kTabulatedMaxK) {
            chk.outcome = FamilyOutcome::BeyondTables;
            detail << " [rank claim holds over the tabulated range only]";
        } else {
            chk.outcome = FamilyOutcome::Mismatch;
        }
        chk.detail = detail.str();
        report.checks.push_back(std::move(chk));
    }
    return report;
}

FamilyReport verify_all_families(long s_max, long sigma_max) {
    FamilyReport report;
    for (const FamilyRule& rule : family_catalog()) {
        if (rule.sigma_parametric) {
            for (long sigma = 1; sigma <= sigma_max; ++sigma) {
                FamilyRule inst = instantiate_sigma(rule, sigma);
                FamilyReport part = verify_family(inst, s_max);
                report.checks.insert(report.checks.end(), part.checks.begin(), part.checks.end());
            }
        } else {
            FamilyReport part = verify_family(rule, s_max);
            report.checks.insert(report.checks.end(), part.checks.begin(), part.checks.end());
        }
    }
    return report;
}

namespace {

nlohmann::ordered_json poly_to_json(const Poly& p) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const mpq_class& c : p.coeff) arr.push_back(c.get_str());
    return arr;
}

}  // namespace

nlohmann::ordered_json catalog_to_json() {
    nlohmann::ordered_json rules = nlohmann::ordered_json::array();
    for (const FamilyRule& rule : family_catalog()) {
        nlohmann::ordered_json j;
        j["name"] = rule.name;
        j["k"] = rule.k_text;
        j["sigma_parametric"] = rule.sigma_parametric;
        if (!rule.sigma_parametric) {
            j["k_coefficients"] = poly_to_json(rule.k_of_s);
        }
        j["condition"] = {{"mod", rule.cond.mod}, {"residues", rule.cond.residues}};
        j["rank"] = rule.r_expected.text();
        if (rule.simple) {
            j["simple"] = {{"x", poly_to_json(rule.simple->first)},
                           {"y", poly_to_json(rule.simple->second)}};
        }
        if (rule.gen) {
            j["generalized"] = {{"X", poly_to_json(rule.gen->first)},
                                {"Y", poly_to_json(rule.gen->second)}};
        }
        j["exceptions"] = rule.exceptions;
        j["exceptions_open_ended"] = rule.exceptions_open_ended;
        if (rule.footnote) j["footnote"] = std::string(1, rule.footnote);
        if (!rule.note.empty()) j["note"] = rule.note;
        rules.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["schema_version"] = 1;
    out["rules"] = std::move(rules);
    return out;
}

}  // namespace pelltri
