#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sds/lottery.hpp"
#include "sds/prefs.hpp"
#include "sds/rational.hpp"

namespace sds {

/// Non-negative rational or infinity, with the arithmetic used for
/// score normalization: inf > x, inf + x = inf, x/inf = 0, inf/inf = 1.
struct ScoreValue {
    bool inf = false;
    Rat v;  // meaningful when !inf

    static ScoreValue finite(Rat r) {
        if (r.sign() < 0) throw Error(Errc::BadInput, "score values are non-negative");
        return ScoreValue{false, std::move(r)};
    }
    static ScoreValue infinity() { return ScoreValue{true, Rat(0)}; }

    bool operator==(const ScoreValue& o) const {
        return inf == o.inf && (inf || v == o.v);
    }
    bool operator!=(const ScoreValue& o) const { return !(*this == o); }
    bool operator<=(const ScoreValue& o) const {
        if (o.inf) return true;
        if (inf) return false;
        return v <= o.v;
    }

    ScoreValue pow(unsigned k) const {
        return inf ? infinity() : finite(v.pow(k));
    }

    std::string str() const { return inf ? "inf" : v.str(); }
};

/// Profile x alternative -> score. Evaluated per profile (all alternatives
/// at once); declared on strict profiles only. The structural laws
/// (localizedness, monotonicity, balancedness, at-most-one-infinity) are
/// checkable via axioms::check_score_function_laws, never assumed.
struct ScoreFunction {
    std::string name;
    std::function<std::vector<ScoreValue>(const Profile&)> eval;

    std::vector<ScoreValue> operator()(const Profile& p) const;
    ScoreValue at(const Profile& p, Alt x) const { return (*this)(p)[x]; }
};

ScoreFunction plurality_score_fn();
ScoreFunction copeland_score_fn();

/// Strictly monotone transform applied pointwise to finite values.
ScoreFunction transform(ScoreFunction base, std::string name,
                        std::function<Rat(const Rat&)> g);

/// k-th power, k >= 1.
ScoreFunction power_transform(ScoreFunction base, unsigned k);

/// Infinity at the Condorcet winner, base score elsewhere. Rejects profiles
/// where the base assigns infinity off the Condorcet winner (would break the
/// at-most-one-infinity law).
ScoreFunction condorcet_augmented(ScoreFunction base);

/// The score function behind the Condorcet rule: infinity at the Condorcet
/// winner, 1 everywhere else.
ScoreFunction condorcet_score_fn();

/// Number of voters ranking x strictly last. Violates monotonicity; used as
/// a negative fixture for the law checker.
ScoreFunction last_place_count_fn();

}  // namespace sds
