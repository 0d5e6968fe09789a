#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sds/lottery.hpp"
#include "sds/prefs.hpp"
#include "sds/rules.hpp"
#include "sds/score.hpp"

namespace sds {

struct CheckOptions {
    std::uint64_t cap = 5'000'000;  // exhaustive enumeration cap (profiles)
    int threads = 1;
    std::uint64_t sample = 0;  // > 0: check this many sampled profiles instead
    std::uint64_t seed = 1;    // sampling only
    bool collect_all = false;  // keep every witness instead of the first
};

struct Stats {
    std::uint64_t profiles = 0;
    std::uint64_t deviations = 0;
};

/// Minimal evidence tuple for a failed axiom. Which fields are present
/// depends on the axiom; every witness replays through the raw definition
/// (see verify_witness).
struct Witness {
    Profile profile;
    std::optional<Profile> deviation_profile;
    int deviator = -1;
    std::optional<Lottery> truthful;
    std::optional<Lottery> deviant;
    std::optional<Permutation> perm;
    std::optional<Alt> alt_x;  // axiom-specific alternatives (e.g. dominated)
    std::optional<Alt> alt_y;
    std::string detail;

    std::string to_json() const;
};

struct AxiomReport {
    enum class Verdict { Pass, Fail, Aborted };

    std::string axiom;
    Verdict verdict = Verdict::Aborted;
    std::optional<Witness> witness;
    std::vector<Witness> all_witnesses;  // collect_all mode only
    Stats checked;
    bool exhaustive = true;  // false in sampled mode
    std::string note;

    bool passed() const { return verdict == Verdict::Pass; }
    bool failed() const { return verdict == Verdict::Fail; }
    std::string verdict_str() const;
    std::string to_json() const;
};

// Every checker enumerates the domain (and, where the axiom quantifies over
// deviations, all unilateral replacements of one voter's order), evaluates
// the SDS, tests the definitional predicate, and stops at the first witness
// in canonical enumeration order. Caps abort with partial statistics;
// DomainMismatch propagates when the SDS rejects the domain kind.

AxiomReport check_weak_sp(const Sds& sds, const DomainSpec& spec, const CheckOptions& opts = {});
AxiomReport check_strong_sp(const Sds& sds, const DomainSpec& spec, const CheckOptions& opts = {});
AxiomReport check_ex_post_efficiency(const Sds& sds, const DomainSpec& spec,
                                     const CheckOptions& opts = {});
AxiomReport check_condorcet_consistency(const Sds& sds, const DomainSpec& spec,
                                        const CheckOptions& opts = {});
AxiomReport check_strong_condorcet_consistency(const Sds& sds, const DomainSpec& spec,
                                               const CheckOptions& opts = {});
AxiomReport check_anonymity(const Sds& sds, const DomainSpec& spec,
                            const CheckOptions& opts = {});
AxiomReport check_neutrality(const Sds& sds, const DomainSpec& spec,
                             const CheckOptions& opts = {});
AxiomReport check_pairwiseness(const Sds& sds, const DomainSpec& spec,
                               const CheckOptions& opts = {});
AxiomReport check_tops_only(const Sds& sds, const DomainSpec& spec,
                            const CheckOptions& opts = {});
AxiomReport check_even_chance(const Sds& sds, const DomainSpec& spec,
                              const CheckOptions& opts = {});
AxiomReport check_sd_efficiency(const Sds& sds, const DomainSpec& spec,
                                const CheckOptions& opts = {});

/// The tops-only rewriting of weak strategyproofness: every unilateral
/// deviation satisfies f(R)=f(R') or f(R,T_i(R)) > f(R',T_i(R)). Agrees with
/// check_weak_sp whenever the rule is tops-only.
AxiomReport check_tops_only_monotonicity(const Sds& sds, const DomainSpec& spec,
                                         const CheckOptions& opts = {});

/// Structural laws of a score function over every (profile, voter, adjacent
/// pair x >_i y): localizedness, monotonicity, balancedness with its two
/// exceptions, at most one infinite score per profile, and optionally the
/// exact-balance law that characterizes the strongly strategyproof subclass.
AxiomReport check_score_function_laws(const ScoreFunction& sf, const DomainSpec& spec,
                                      bool include_gibbard_balance = false,
                                      const CheckOptions& opts = {});

struct GroupPowerReport {
    std::vector<int> group;
    enum class Property { Decisive, Nominating } property = Property::Decisive;
    bool holds = false;
    std::optional<Witness> witness;  // profile violating the property
    Stats checked;
};

/// Group power over profiles where every group member reports the same
/// order: decisive = the group's common tops absorb all probability;
/// nominating = they keep positive probability.
GroupPowerReport is_decisive(const Sds& sds, const std::vector<int>& group,
                             const DomainSpec& spec, const CheckOptions& opts = {});
GroupPowerReport is_nominating(const Sds& sds, const std::vector<int>& group,
                               const DomainSpec& spec, const CheckOptions& opts = {});

/// Voters i with f(R, T_i(R)) > 0 on every profile of the domain.
std::vector<int> weak_dictators(const Sds& sds, const DomainSpec& spec,
                                const CheckOptions& opts = {});

struct DictClassification {
    enum class Kind { Dictatorial, Bidictatorial, Neither } kind = Kind::Neither;
    int i = -1, j = -1;
    std::string str() const;
};

/// f(R, T_i(R)) = 1 everywhere (dictatorial), f(R, T_i u T_j) = 1 everywhere
/// (bidictatorial), or neither.
DictClassification classify_dictatorial(const Sds& sds, const DomainSpec& spec,
                                        const CheckOptions& opts = {});

/// Replays a FAIL witness through the raw definitional predicate.
bool verify_witness(const Sds& sds, const std::string& axiom, const Witness& w);

/// CLI axiom names: weak-sp, strong-sp, ex-post, cc, strong-cc, anonymity,
/// neutrality, pairwise, tops-only, even-chance, sd-efficiency,
/// tops-monotonicity.
AxiomReport run_axiom_check(const std::string& name, const Sds& sds, const DomainSpec& spec,
                            const CheckOptions& opts = {});
std::vector<std::string> known_axioms();

}  // namespace sds
