#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sds/lottery.hpp"
#include "sds/prefs.hpp"
#include "sds/rational.hpp"

namespace sds {

enum class Rel { Le, Lt, Eq, Ge, Gt };

Rel negate_rel(Rel r);  // complement relation: <= becomes >, etc.
std::string rel_str(Rel r);

struct LinRow {
    std::vector<Rat> coeff;
    Rel rel = Rel::Le;
    Rat rhs;
};

/// Small exact linear system. Strict relations are first-class; there is no
/// epsilon anywhere. When `vars_nonnegative` is set the solver treats every
/// variable as >= 0 directly (the common case here: probabilities).
struct LinearSystem {
    int num_vars = 0;
    bool vars_nonnegative = false;
    std::vector<std::string> var_names;  // optional, for diagnostics
    std::vector<LinRow> rows;

    void add(std::vector<Rat> coeff, Rel rel, Rat rhs);
    /// Single-variable convenience row.
    void add_var(int var, Rel rel, Rat rhs);
    void append(const LinearSystem& other);  // same variable space

    bool has_strict() const;
    std::string describe() const;
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rat> point;  // satisfies every row exactly when feasible
};

/// Sound and complete over the rationals, strict inequalities included:
/// a bounded auxiliary slack is maximized over the weakened system, and the
/// system is strictly feasible iff the optimal slack is positive.
FeasibilityResult feasible(const LinearSystem& sys);

struct OptResult {
    bool unbounded = false;
    Rat value;
    std::vector<Rat> point;
};

/// Exact maximum of objective·x over the system (non-strict rows only).
/// Throws InfeasibleSystem when the system is empty, SIZE_LIMIT when it is
/// beyond the configured caps.
OptResult maximize(const LinearSystem& sys, const std::vector<Rat>& objective);

/// Checks assumptions |= (case_1 or case_2 or ...): the complement is
/// expanded case-by-case (negating a conjunction yields one branch per row,
/// two for equalities) and every branch must be infeasible together with the
/// assumptions. On failure returns a counterexample point.
struct ImpliesResult {
    bool holds = false;
    std::vector<Rat> counterexample;  // when !holds
};

ImpliesResult implies(const LinearSystem& assumptions,
                      const std::vector<LinearSystem>& conclusion_cases,
                      std::uint64_t case_cap = 65536);

/// Searches for a lottery q that ex ante dominates p on this profile:
/// q(U) >= p(U) for every voter's upper contour set with at least one strict.
/// Returns the dominating lottery (re-verified through sd_compare) or
/// nothing when p is SD-efficient.
std::optional<Lottery> sd_dominated(const Profile& profile, const Lottery& p);

}  // namespace sds
