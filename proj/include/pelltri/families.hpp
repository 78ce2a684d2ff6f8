#pragma once

// Closed-form families of fundamental solutions for k expressed around a
// nearby square s^2: each rule carries k(s), a congruence condition on s,
// the predicted simple fundamental (x_f, y_f), an optional predicted
// generalized fundamental beyond (+-1, 1), an expected rank, and the
// exception list of k where the prediction is known to break. Expressions
// use exact rational coefficients and must evaluate to integers on every
// admissible s; each prediction is verified against the computed solvers.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "pelltri/pellcore.hpp"

namespace pelltri {

// Polynomial in s with exact rational coefficients, ascending degree.
// eval() asserts the value is an integer.
struct Poly {
    std::vector<mpq_class> coeff;
    Int eval(const Int& s) const;
    std::string text() const;  // e.g. "(2*s^2+4*s)/3-1" style, for reports
};

// s admissible iff s % mod is in residues (and s >= s_min).
struct Congruence {
    long mod = 1;
    std::vector<long> residues{0};
    long s_min = 1;
    bool admits(const Int& s) const;
};

struct RExpect {
    enum class Cmp { Eq, Ge, Gt };
    Cmp cmp = Cmp::Eq;
    int value = 2;
    bool matches(int r) const;
    std::string text() const;
};

struct FamilyRule {
    std::string name;    // e.g. "s2+2", "s2+1-even"
    std::string k_text;  // display form of k(s)
    Poly k_of_s;
    Congruence cond;
    RExpect r_expected;
    // Predicted (x_f, y_f); absent for rows with no stated pattern.
    std::optional<std::pair<Poly, Poly>> simple;
    // Predicted generalized fundamental beyond (+-1,1); absent when the row
    // states none exist (rank 2) or gives no pattern.
    std::optional<std::pair<Poly, Poly>> gen;
    std::vector<long> exceptions;     // excluded k values
    bool exceptions_open_ended = false;  // list ends with "..."
    char footnote = 0;                // 'a'..'j' marker, 0 if none
    long sigma = 0;                   // >0 for an instantiated sigma rule
    bool sigma_parametric = false;    // template entry, instantiate before use
    bool sigma_minus = false;         // sign of the 2s/sigma term
    std::string note;                 // corrections, caveats
};

// All transcribed rules. The two sigma-parametric entries must be
// instantiated with a concrete sigma before predict/verify.
const std::vector<FamilyRule>& family_catalog();

FamilyRule instantiate_sigma(const FamilyRule& tmpl, long sigma);

struct Prediction {
    Int k;
    std::optional<std::pair<Int, Int>> simple;
    std::optional<std::pair<Int, Int>> gen;
};

// True when s satisfies the congruence, k(s) >= 5 and non-square, and k is
// not in the rule's exceptions.
bool admissible(const FamilyRule& rule, const Int& s);

// Exact evaluation of the rule at s; throws InadmissibleSError otherwise.
Prediction predict(const FamilyRule& rule, const Int& s);

// The rank column of the source table was compiled from the tabulated range
// k <= 102 (footnotes reach slightly past it); rank claims are enforced there
// and reported, not enforced, beyond it. Identity, minimality and membership
// checks are enforced for every k.
inline constexpr long kTabulatedMaxK = 102;

enum class FamilyOutcome {
    Pass,
    ExpectedException,   // k in the rule's footnoted exception set
    KnownDiscrepancy,    // pinned, computationally refuted in-range table claim
    BeyondTables,        // rank claim fails for k beyond the tabulated range
    Mismatch,            // anything else that fails
};

struct FamilyCheck {
    std::string rule;
    long sigma;
    long s;
    Int k;
    FamilyOutcome outcome;
    bool simple_checked = false, simple_is_fundamental = false, simple_is_solution = false;
    bool gen_checked = false, gen_is_member = false, gen_is_solution = false;
    bool r_checked = false, r_matches = false;
    int r_computed = 0;
    std::string detail;
};

struct FamilyReport {
    std::vector<FamilyCheck> checks;
    std::size_t passes() const;
    std::size_t expected_exceptions() const;
    std::size_t known_discrepancies() const;
    std::size_t beyond_tables() const;
    std::size_t mismatches() const;
    bool clean() const { return mismatches() == 0; }
};

// Verify one rule for all admissible s <= s_max (rule must be concrete).
FamilyReport verify_family(const FamilyRule& rule, long s_max);

// Verify the whole catalog; sigma templates instantiated for 1..sigma_max.
FamilyReport verify_all_families(long s_max, long sigma_max);

// Table claims refuted by exact computation, with the computed value.
struct KnownDiscrepancy {
    std::string rule;
    long sigma;
    long s;
    long k;
    std::string claimed;
    std::string computed;
};

const std::vector<KnownDiscrepancy>& known_discrepancies();

// Catalog as JSON (rule name, coefficient lists, conditions, exceptions),
// one schema shared by tests and docs.
nlohmann::ordered_json catalog_to_json();

}  // namespace pelltri
