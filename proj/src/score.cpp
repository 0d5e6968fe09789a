#include "sds/score.hpp"

namespace sds {

std::vector<ScoreValue> ScoreFunction::operator()(const Profile& p) const {
    if (!p.is_strict())
        throw Error(Errc::DomainMismatch, "score function '" + name + "' is declared on strict profiles only");
    return eval(p);
}

ScoreFunction plurality_score_fn() {
    return ScoreFunction{"plurality", [](const Profile& p) {
        auto s = plurality_scores(p);
        std::vector<ScoreValue> out;
        out.reserve(p.m());
        for (int v : s) out.push_back(ScoreValue::finite(Rat(v)));
        return out;
    }};
}

ScoreFunction copeland_score_fn() {
    return ScoreFunction{"copeland", [](const Profile& p) {
        auto s2 = copeland_scores_doubled(p);
        std::vector<ScoreValue> out;
        out.reserve(p.m());
        for (int v : s2) out.push_back(ScoreValue::finite(Rat(v, 2)));
        return out;
    }};
}

ScoreFunction transform(ScoreFunction base, std::string name,
                        std::function<Rat(const Rat&)> g) {
    auto inner = base.eval;
    return ScoreFunction{std::move(name), [inner, g](const Profile& p) {
        auto vals = inner(p);
        for (auto& v : vals)
            if (!v.inf) v = ScoreValue::finite(g(v.v));
        return vals;
    }};
}

ScoreFunction power_transform(ScoreFunction base, unsigned k) {
    if (k < 1) throw Error(Errc::BadInput, "power transform needs k >= 1");
    std::string name = base.name + "^" + std::to_string(k);
    if (k == 1) return ScoreFunction{std::move(name), base.eval};
    return transform(std::move(base), std::move(name), [k](const Rat& r) { return r.pow(k); });
}

ScoreFunction condorcet_augmented(ScoreFunction base) {
    auto inner = base.eval;
    std::string name = base.name + "+cw";
    return ScoreFunction{std::move(name), [inner](const Profile& p) {
        auto vals = inner(p);
        auto cw = condorcet_winner(p);
        for (Alt a = 0; a < p.m(); ++a) {
            if (vals[a].inf && (!cw || *cw != a))
                throw Error(Errc::BadInput,
                            "base score assigns infinity off the Condorcet winner");
        }
        if (cw) vals[*cw] = ScoreValue::infinity();
        return vals;
    }};
}

ScoreFunction condorcet_score_fn() {
    return ScoreFunction{"condorcet", [](const Profile& p) {
        auto cw = condorcet_winner(p);
        std::vector<ScoreValue> out(p.m(), ScoreValue::finite(Rat(1)));
        if (cw) out[*cw] = ScoreValue::infinity();
        return out;
    }};
}

ScoreFunction last_place_count_fn() {
    return ScoreFunction{"last-place-count", [](const Profile& p) {
        std::vector<ScoreValue> out(p.m(), ScoreValue::finite(Rat(0)));
        std::vector<int> counts(p.m(), 0);
        for (int i = 0; i < p.n(); ++i) {
            const WeakOrder& o = p.voter(i);
            for (Alt a = 0; a < p.m(); ++a)
                if (o.rank(a) == o.num_classes() - 1) counts[a]++;
        }
        for (Alt a = 0; a < p.m(); ++a) out[a] = ScoreValue::finite(Rat(counts[a]));
        return out;
    }};
}

}  // namespace sds
