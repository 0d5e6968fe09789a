#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sds/lottery.hpp"
#include "sds/prefs.hpp"
#include "sds/score.hpp"

namespace sds {

enum class DomainKind { Strict, Weak };  // Weak accepts all profiles

/// A social decision scheme: profile -> lottery. Stateless and safe to
/// evaluate concurrently. The structural tags are claims for audit
/// cross-checks; the axioms module verifies them, nothing trusts them.
struct Sds {
    std::string name;
    DomainKind domain = DomainKind::Strict;
    std::function<Lottery(const Profile&)> eval;

    bool claims_even_chance = false;
    bool claims_tops_only = false;
    bool claims_pairwise = false;

    Lottery operator()(const Profile& p) const;
};

/// f(R,x) = s(R,x) / sum_y s(R,y) with infinity absorbing: an infinite score
/// takes probability 1. Throws ZeroTotalScore when all scores vanish.
Sds score_based_sds(ScoreFunction sf);

/// Condorcet winner with probability 1, uniform over all alternatives
/// otherwise. Identical to score_based_sds(condorcet_score_fn()).
Sds condorcet_rule();

/// Uniform over OMNI(R), the alternatives some voter ranks strictly first.
Sds omninomination_rule();

struct ParamOmniConfig {
    int theta1 = 0;  // in {ceil((n+1)/2), ..., n+1}, validated per profile
    int theta2 = 0;  // in {0, ..., m-1}
};

/// Three-branch family: theta1-majority winner takes all; else OMNI(R) when
/// |OMNI(R)| <= theta2; else uniform over everything.
Sds parameterized_omninomination(ParamOmniConfig cfg);

/// Weighted random dictatorship on strict profiles; weights sum to 1.
Sds random_dictatorship(std::vector<Rat> weights);
Sds uniform_random_dictatorship();

/// Average over all n! dictator sequences; within one sequence survivors are
/// intersected with each dictator's best reachable class, residual ties
/// resolve uniformly. Exact; n! capped.
Sds random_serial_dictatorship(int max_n = 8);

Sds uniform_pareto_rule();
Sds constant_rule(std::vector<std::string> alt_names);
Sds dictatorial_rule(int voter);
Sds bidictatorial_rule(int voter_i, int voter_j);

/// Boundary rules: Condorcet winner, else uniform over OMNI (needs n <= 4);
/// Condorcet winner, else the half-half plurality pair, else uniform over the
/// Pareto-optimal set (needs m <= 4).
Sds remark4_small_n_rule();
Sds remark4_small_m_rule();

/// Lookup-table SDS over a fixed domain; keys are compact profile encodings.
struct SdsTable {
    DomainSpec domain;
    std::map<std::string, Lottery> entries;  // compact_profile(p) -> lottery
    bool claims_even_chance = false;
    bool claims_tops_only = false;
    bool claims_pairwise = false;
};

Sds table_rule(std::shared_ptr<const SdsTable> table);

std::string table_to_json(const SdsTable& table);
std::shared_ptr<SdsTable> table_from_json(const std::string& text);
std::shared_ptr<SdsTable> load_table(const std::string& path);

/// CLI rule identifiers: condorcet, omni, param-omni?t1=..&t2=..,
/// score:plurality^k, score:copeland^k, score:copeland^k+cw, rd:uniform,
/// rsd, pareto-uniform, const:{a,b}, dict:i, bidict:i,j, remark4-n,
/// remark4-m, table:<path>.
Sds parse_rule_id(const std::string& id);

}  // namespace sds
