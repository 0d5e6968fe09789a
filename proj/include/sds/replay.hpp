#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sds/lottery.hpp"
#include "sds/prefs.hpp"
#include "sds/ratlp.hpp"
#include "sds/rules.hpp"

namespace sds {

// --- Margin-graph isomorphism -------------------------------------------------

/// Lexicographically-first permutation tau with m2[x][y] = m1[tau(x)][tau(y)]
/// for all x, y, found by exhaustive search over the m! candidates. For a
/// pairwise and neutral SDS realized on profiles P1 (margins m1) and P2
/// (margins m2), it follows that f(P2, x) = f(P1, tau(x)).
std::optional<Permutation> margin_isomorphism(const MajorityMargins& m1,
                                              const MajorityMargins& m2);

// --- Even-chance CSP ------------------------------------------------------------

/// Per-node constraints. The axiom kinds restate axioms at one profile;
/// the two derived kinds restate facts that hold for every SDS satisfying
/// the instance's axioms (they can be expanded into manipulation chains so
/// the whole argument rests on the axioms alone).
enum class UnaryKind {
    ExPost,           // assignment is a subset of the Pareto-optimal set
    Condorcet,        // Condorcet winner present => exactly its singleton
    StrongCc,         // singleton <=> Condorcet winner
    OnlyCwSingleton,  // derived: singletons only at Condorcet winners
    TiedPairsOnly,    // derived: two-element sets only on majority ties
};

std::string unary_name(UnaryKind k);
UnaryKind unary_from_name(const std::string& s);

struct CspEdge {
    enum class Kind { WeakSp, Symmetry };
    Kind kind = Kind::WeakSp;
    int from = 0;
    int to = 0;
    int deviator = -1;         // WeakSp: voter index (0-based)
    Permutation alt_perm;      // Symmetry
    Permutation voter_perm;    // Symmetry
};

struct CspNode {
    std::string name;
    std::vector<std::string> aliases;
    Profile profile;
};

struct CspInstance {
    std::string name;
    std::string expected;  // "SAT" / "UNSAT" / empty
    std::shared_ptr<const std::vector<std::string>> alt_names;
    std::vector<CspNode> nodes;
    std::vector<UnaryKind> unaries;  // applied at every node
    std::vector<CspEdge> edges;

    /// Adds a node, merging duplicates (same profile) under the first name.
    int add_node(const std::string& name, Profile p);
    int node_index(const std::string& name) const;  // -1 when absent

    /// WeakSp edge; validates that the profiles differ in exactly one voter
    /// and infers the deviator. Edges between merged identical nodes are
    /// dropped (returns false).
    bool add_sp_edge(int from, int to);
    void add_symmetry_edge(int from, int to, Permutation alt_perm, Permutation voter_perm);
};

struct CspResult {
    enum class Status { Sat, Unsat, BudgetExceeded };
    Status status = Status::BudgetExceeded;
    std::vector<AltSet> assignment;  // per node when Sat (re-verified)
    std::uint64_t search_nodes = 0;
    std::string trace;
};

/// Complete search: arc-consistency propagation plus backtracking in node
/// order, values by set size then lexicographic rank. SAT assignments are
/// re-verified against the raw definitions before being returned; UNSAT is
/// trustworthy because the search is exhaustive.
CspResult solve_csp(const CspInstance& inst, std::uint64_t budget = 10'000'000);

/// Independent re-check of an assignment against every unary and edge,
/// going through the lottery-level stochastic-dominance route.
bool verify_csp_assignment(const CspInstance& inst, const std::vector<AltSet>& assignment,
                           std::string* why = nullptr);

/// Replaces the derived unary kinds by the manipulation chains that prove
/// them, so only axiom unaries remain. Chains are attached to the original
/// nodes; expanding OnlyCwSingleton requires an odd electorate.
CspInstance expand_lemma_unaries(const CspInstance& inst);

// --- Scripted linear deduction -----------------------------------------------------

struct ScriptAtom {
    // sum of coeff * f(node, alt) REL rhs
    std::vector<std::tuple<std::string, std::string, Rat>> terms;
    Rel rel = Rel::Eq;
    Rat rhs;
};

struct ScriptStep {
    std::string kind;  // pareto | symmetry | efficiency | sp | smon | neutral_iso |
                       // assert | contradiction
    std::string profile;            // pareto, efficiency
    std::string from, to;           // symmetry, smon, neutral_iso
    std::string truth, dev;         // sp, contradiction(manipulation)
    int deviator = -1;              // 0-based voter of the truth profile
    std::string dev_order;          // sp via anonymity: the reported relation
    Alt winner = -1, loser = -1;    // pareto
    Alt reinforce = -1, weaken = -1;  // smon
    Permutation alt_perm;           // symmetry, neutral_iso
    Permutation voter_perm;         // symmetry
    std::vector<ScriptAtom> claim;  // conjunction
    std::map<std::string, Rat> dominator;  // efficiency certificate
    std::vector<std::string> using_nodes;  // extra scope
    std::string via;                // contradiction: manipulation | infeasible
};

struct ProofScript {
    std::string name;
    std::string expected;  // "VERIFIED"
    std::vector<std::string> axioms;
    std::shared_ptr<const std::vector<std::string>> alt_names;
    std::vector<std::pair<std::string, Profile>> profiles;
    std::vector<ScriptStep> steps;

    const Profile& profile(const std::string& name) const;
};

struct ScriptResult {
    bool verified = false;
    int failed_step = -1;  // 0-based
    std::string reason;
    std::vector<std::string> log;

    /// Final fact store, for spot checks of derived values.
    struct Fact {
        std::vector<std::tuple<std::string, std::string, Rat>> terms;
        Rel rel;
        Rat rhs;
    };
    std::vector<Fact> facts;
};

ScriptResult run_script(const ProofScript& script);

/// True when the script's final facts entail the given atom.
bool script_entails(const ProofScript& script, const ScriptResult& result,
                    const ScriptAtom& atom);

// --- Whole-domain search --------------------------------------------------------------

struct SearchResult {
    enum class Status { Sat, Unsat, BudgetExceeded };
    Status status = Status::BudgetExceeded;
    std::shared_ptr<SdsTable> table;  // Sat only
    std::uint64_t search_nodes = 0;
};

/// Complete CSP over every profile of the domain with all unilateral
/// weak-strategyproofness edges, the requested axiom unaries, and symmetry
/// edges for anonymity/neutrality; outcomes range over even-chance sets.
/// Axiom names: weak-sp (always on), ex-post, cc, strong-cc, anonymity,
/// neutrality, even-chance (implied).
SearchResult full_domain_search(const std::vector<std::string>& axioms, const DomainSpec& spec,
                                std::uint64_t budget = 10'000'000);

// --- Shipped instances ------------------------------------------------------------------

/// Even-chance impossibility instance for m = 5 and odd n >= 5 (default 5):
/// profile family R1..R10, RH1..RH8 with the per-voter deviation chains
/// expanded for the given electorate size.
CspInstance thm3_instance(int n = 5);

/// Even-electorate variant (strong Condorcet-consistency), n = 8, m = 5.
CspInstance even_n_proposition_instance();

// --- JSON I/O ------------------------------------------------------------------------------

struct ReplayFile {
    enum class Type { Csp, Deduction } type = Type::Csp;
    CspInstance csp;
    ProofScript script;
};

ReplayFile load_replay_file(const std::string& path);
std::string csp_to_json(const CspInstance& inst,
                        const std::map<std::string, std::string>& profile_files);
void save_profiles_and_instance(const CspInstance& inst, const std::string& repo_root,
                                const std::string& profile_dir, const std::string& json_path);

}  // namespace sds
