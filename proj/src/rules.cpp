#include "sds/rules.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sds {

using nlohmann::json;

Lottery Sds::operator()(const Profile& p) const {
    if (domain == DomainKind::Strict && !p.is_strict())
        throw Error(Errc::DomainMismatch, "rule '" + name + "' is defined on strict profiles only");
    return eval(p);
}

Sds score_based_sds(ScoreFunction sf) {
    Sds sds;
    sds.name = "score:" + sf.name;
    sds.domain = DomainKind::Strict;
    sds.claims_tops_only = (sf.name.rfind("plurality", 0) == 0);
    sds.claims_pairwise =
        (sf.name.rfind("copeland", 0) == 0) || (sf.name.rfind("condorcet", 0) == 0);
    sds.eval = [sf](const Profile& p) {
        auto vals = sf(p);
        int inf_at = -1;
        for (Alt a = 0; a < p.m(); ++a) {
            if (!vals[a].inf) continue;
            if (inf_at >= 0)
                throw Error(Errc::BadInput, "score function '" + sf.name +
                                                "' assigns two infinite scores on " +
                                                compact_profile(p));
            inf_at = a;
        }
        if (inf_at >= 0) return Lottery::point(p.m(), inf_at);
        Rat total(0);
        for (const auto& v : vals) total += v.v;
        if (total.sign() == 0)
            throw Error(Errc::ZeroTotalScore,
                        "all scores of '" + sf.name + "' vanish on " + compact_profile(p));
        std::vector<Rat> probs;
        probs.reserve(p.m());
        for (const auto& v : vals) probs.push_back(v.v / total);
        return Lottery(std::move(probs));
    };
    return sds;
}

Sds condorcet_rule() {
    Sds sds;
    sds.name = "condorcet";
    sds.domain = DomainKind::Strict;
    sds.claims_even_chance = true;
    sds.claims_pairwise = true;
    sds.eval = [](const Profile& p) {
        auto cw = condorcet_winner(p);
        if (cw) return Lottery::point(p.m(), *cw);
        return Lottery::uniform(p.m());
    };
    return sds;
}

Sds omninomination_rule() {
    Sds sds;
    sds.name = "omni";
    sds.domain = DomainKind::Strict;
    sds.claims_even_chance = true;
    sds.claims_tops_only = true;
    sds.eval = [](const Profile& p) { return Lottery::even_chance(p.m(), omni_set(p)); };
    return sds;
}

Sds parameterized_omninomination(ParamOmniConfig cfg) {
    Sds sds;
    sds.name = "param-omni?t1=" + std::to_string(cfg.theta1) + "&t2=" + std::to_string(cfg.theta2);
    sds.domain = DomainKind::Strict;
    sds.claims_even_chance = true;
    sds.claims_tops_only = true;
    sds.eval = [cfg](const Profile& p) {
        int lo = (p.n() + 2) / 2;  // ceil((n+1)/2)
        if (cfg.theta1 < lo || cfg.theta1 > p.n() + 1)
            throw Error(Errc::ConfigOutOfRange,
                        "theta1 must lie in {" + std::to_string(lo) + ",...," +
                            std::to_string(p.n() + 1) + "}");
        if (cfg.theta2 < 0 || cfg.theta2 > p.m() - 1)
            throw Error(Errc::ConfigOutOfRange,
                        "theta2 must lie in {0,...," + std::to_string(p.m() - 1) + "}");
        auto sp = plurality_scores(p);
        int best = *std::max_element(sp.begin(), sp.end());
        if (best >= cfg.theta1) {
            Alt x = static_cast<Alt>(std::max_element(sp.begin(), sp.end()) - sp.begin());
            return Lottery::point(p.m(), x);
        }
        AltSet omni = omni_set(p);
        if (set_size(omni) <= cfg.theta2) return Lottery::even_chance(p.m(), omni);
        return Lottery::uniform(p.m());
    };
    return sds;
}

Sds random_dictatorship(std::vector<Rat> weights) {
    Rat total(0);
    for (const Rat& w : weights) {
        if (w.sign() < 0) throw Error(Errc::BadWeights, "negative dictatorship weight");
        total += w;
    }
    if (total != Rat(1)) throw Error(Errc::BadWeights, "dictatorship weights sum to " + total.str());
    Sds sds;
    sds.name = "rd";
    sds.domain = DomainKind::Strict;
    sds.claims_tops_only = true;
    sds.eval = [weights](const Profile& p) {
        if (static_cast<int>(weights.size()) != p.n())
            throw Error(Errc::BadWeights, "weight vector has wrong number of voters");
        std::vector<Rat> probs(p.m(), Rat(0));
        for (int i = 0; i < p.n(); ++i) {
            AltSet t = p.voter(i).tops();
            probs[set_members(t)[0]] += weights[i];
        }
        return Lottery(std::move(probs));
    };
    return sds;
}

Sds uniform_random_dictatorship() {
    Sds sds;
    sds.name = "rd:uniform";
    sds.domain = DomainKind::Strict;
    sds.claims_tops_only = true;
    sds.eval = [](const Profile& p) {
        std::vector<Rat> probs(p.m(), Rat(0));
        Rat w(1, p.n());
        for (int i = 0; i < p.n(); ++i) probs[set_members(p.voter(i).tops())[0]] += w;
        return Lottery(std::move(probs));
    };
    return sds;
}

Sds random_serial_dictatorship(int max_n) {
    Sds sds;
    sds.name = "rsd";
    sds.domain = DomainKind::Weak;
    sds.eval = [max_n](const Profile& p) {
        if (p.n() > max_n)
            throw Error(Errc::CapExceeded, "rsd enumerates n! dictator sequences; n = " +
                                               std::to_string(p.n()) + " exceeds the cap");
        std::vector<int> order(p.n());
        std::iota(order.begin(), order.end(), 0);
        std::vector<Rat> probs(p.m(), Rat(0));
        std::uint64_t sequences = factorial(p.n());
        do {
            AltSet survivors = full_set(p.m());
            for (int d : order) {
                const WeakOrder& o = p.voter(d);
                for (int k = 0; k < o.num_classes(); ++k) {
                    AltSet best = o.class_prefix(k) & survivors;
                    if (k > 0) best &= ~o.class_prefix(k - 1);
                    if (best) {
                        survivors = best;
                        break;
                    }
                }
            }
            Rat share(1, static_cast<long>(sequences) * set_size(survivors));
            for (Alt a : set_members(survivors)) probs[a] += share;
        } while (std::next_permutation(order.begin(), order.end()));
        return Lottery(std::move(probs));
    };
    return sds;
}

Sds uniform_pareto_rule() {
    Sds sds;
    sds.name = "pareto-uniform";
    sds.domain = DomainKind::Weak;
    sds.claims_even_chance = true;
    sds.eval = [](const Profile& p) {
        return Lottery::even_chance(p.m(), pareto_optimal_set(p));
    };
    return sds;
}

Sds constant_rule(std::vector<std::string> alt_names) {
    if (alt_names.empty()) throw Error(Errc::BadInput, "constant rule needs a non-empty set");
    Sds sds;
    sds.name = "const";
    sds.domain = DomainKind::Weak;
    sds.claims_even_chance = true;
    sds.claims_tops_only = true;
    sds.claims_pairwise = true;
    sds.eval = [alt_names](const Profile& p) {
        AltSet s = 0;
        for (const auto& nm : alt_names) s |= AltSet(1) << p.alt_by_name(nm);
        return Lottery::even_chance(p.m(), s);
    };
    return sds;
}

Sds dictatorial_rule(int voter) {
    Sds sds;
    sds.name = "dict:" + std::to_string(voter);
    sds.domain = DomainKind::Weak;
    sds.claims_even_chance = true;
    sds.claims_tops_only = true;
    sds.eval = [voter](const Profile& p) {
        if (voter < 0 || voter >= p.n()) throw Error(Errc::BadInput, "no such voter");
        return Lottery::even_chance(p.m(), p.voter(voter).tops());
    };
    return sds;
}

Sds bidictatorial_rule(int voter_i, int voter_j) {
    if (voter_i == voter_j) throw Error(Errc::BadInput, "bidictatorial rule needs two distinct voters");
    Sds sds;
    sds.name = "bidict:" + std::to_string(voter_i) + "," + std::to_string(voter_j);
    sds.domain = DomainKind::Weak;
    sds.claims_even_chance = true;
    sds.claims_tops_only = true;
    sds.eval = [voter_i, voter_j](const Profile& p) {
        if (voter_i >= p.n() || voter_j >= p.n()) throw Error(Errc::BadInput, "no such voter");
        return Lottery::even_chance(p.m(), p.voter(voter_i).tops() | p.voter(voter_j).tops());
    };
    return sds;
}

Sds remark4_small_n_rule() {
    Sds sds;
    sds.name = "remark4-n";
    sds.domain = DomainKind::Strict;
    sds.claims_even_chance = true;
    sds.eval = [](const Profile& p) {
        if (p.n() > 4)
            throw Error(Errc::SizeBoundViolated, "remark4-n is defined for n <= 4");
        auto cw = condorcet_winner(p);
        if (cw) return Lottery::point(p.m(), *cw);
        return Lottery::even_chance(p.m(), omni_set(p));
    };
    return sds;
}

Sds remark4_small_m_rule() {
    Sds sds;
    sds.name = "remark4-m";
    sds.domain = DomainKind::Strict;
    sds.claims_even_chance = true;
    sds.eval = [](const Profile& p) {
        if (p.m() > 4)
            throw Error(Errc::SizeBoundViolated, "remark4-m is defined for m <= 4");
        auto cw = condorcet_winner(p);
        if (cw) return Lottery::point(p.m(), *cw);
        if (p.n() % 2 == 0) {
            auto sp = plurality_scores(p);
            AltSet half = 0;
            for (Alt a = 0; a < p.m(); ++a)
                if (2 * sp[a] == p.n()) half |= AltSet(1) << a;
            if (set_size(half) == 2) return Lottery::even_chance(p.m(), half);
        }
        return Lottery::even_chance(p.m(), pareto_optimal_set(p));
    };
    return sds;
}

Sds table_rule(std::shared_ptr<const SdsTable> table) {
    Sds sds;
    sds.name = "table";
    sds.domain = table->domain.kind == OrderKind::Strict ? DomainKind::Strict : DomainKind::Weak;
    sds.claims_even_chance = table->claims_even_chance;
    sds.claims_tops_only = table->claims_tops_only;
    sds.claims_pairwise = table->claims_pairwise;
    sds.eval = [table](const Profile& p) {
        auto it = table->entries.find(compact_profile(p));
        if (it == table->entries.end())
            throw Error(Errc::MissingProfile, "table has no entry for " + compact_profile(p));
        return it->second;
    };
    return sds;
}

std::string table_to_json(const SdsTable& table) {
    json j;
    j["domain"] = {{"kind", table.domain.kind == OrderKind::Strict ? "strict" : "weak"},
                   {"m", table.domain.m},
                   {"n", table.domain.n}};
    json names = json::array();
    for (const auto& nm : *table.domain.names_or_default()) names.push_back(nm);
    j["alts"] = names;
    j["tags"] = {{"even_chance", table.claims_even_chance},
                 {"tops_only", table.claims_tops_only},
                 {"pairwise", table.claims_pairwise}};
    json entries = json::object();
    const auto& nm = *table.domain.names_or_default();
    for (const auto& [key, lot] : table.entries) {
        json l = json::object();
        for (Alt a = 0; a < lot.m(); ++a) l[nm[a]] = lot[a].str();
        entries[key] = l;
    }
    j["entries"] = entries;
    return j.dump(2);
}

std::shared_ptr<SdsTable> table_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("bad table JSON: ") + e.what());
    }
    auto table = std::make_shared<SdsTable>();
    try {
        table->domain.m = j.at("domain").at("m").get<int>();
        table->domain.n = j.at("domain").at("n").get<int>();
        table->domain.kind =
            j.at("domain").at("kind").get<std::string>() == "weak" ? OrderKind::Weak : OrderKind::Strict;
        auto names = std::make_shared<std::vector<std::string>>();
        for (const auto& nm : j.at("alts")) names->push_back(nm.get<std::string>());
        table->domain.names = names;
        if (j.contains("tags")) {
            table->claims_even_chance = j["tags"].value("even_chance", false);
            table->claims_tops_only = j["tags"].value("tops_only", false);
            table->claims_pairwise = j["tags"].value("pairwise", false);
        }
        for (const auto& [key, l] : j.at("entries").items()) {
            std::vector<Rat> probs(table->domain.m, Rat(0));
            for (Alt a = 0; a < table->domain.m; ++a)
                probs[a] = Rat::parse(l.at((*names)[a]).get<std::string>());
            table->entries.emplace(key, Lottery(std::move(probs)));
        }
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("bad table JSON: ") + e.what());
    }
    return table;
}

std::shared_ptr<SdsTable> load_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::BadInput, "cannot open table file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return table_from_json(ss.str());
}

namespace {

unsigned parse_power_suffix(std::string& body) {
    auto caret = body.find('^');
    if (caret == std::string::npos) return 1;
    unsigned k = static_cast<unsigned>(std::stoul(body.substr(caret + 1)));
    body = body.substr(0, caret);
    return k;
}

}  // namespace

Sds parse_rule_id(const std::string& id) {
    if (id == "condorcet") return condorcet_rule();
    if (id == "omni") return omninomination_rule();
    if (id == "rd:uniform") return uniform_random_dictatorship();
    if (id == "rsd") return random_serial_dictatorship();
    if (id == "pareto-uniform") return uniform_pareto_rule();
    if (id == "remark4-n") return remark4_small_n_rule();
    if (id == "remark4-m") return remark4_small_m_rule();

    if (id.rfind("param-omni?", 0) == 0) {
        std::string q = id.substr(11);
        ParamOmniConfig cfg;
        bool got1 = false, got2 = false;
        std::stringstream ss(q);
        std::string part;
        while (std::getline(ss, part, '&')) {
            if (part.rfind("t1=", 0) == 0) { cfg.theta1 = std::stoi(part.substr(3)); got1 = true; }
            else if (part.rfind("t2=", 0) == 0) { cfg.theta2 = std::stoi(part.substr(3)); got2 = true; }
            else throw Error(Errc::BadInput, "bad param-omni parameter '" + part + "'");
        }
        if (!got1 || !got2) throw Error(Errc::BadInput, "param-omni needs t1= and t2=");
        return parameterized_omninomination(cfg);
    }
    if (id.rfind("score:", 0) == 0) {
        std::string body = id.substr(6);
        bool cw = false;
        if (body.size() > 3 && body.compare(body.size() - 3, 3, "+cw") == 0) {
            cw = true;
            body = body.substr(0, body.size() - 3);
        }
        unsigned k = parse_power_suffix(body);
        ScoreFunction base;
        if (body == "plurality") base = plurality_score_fn();
        else if (body == "copeland") base = copeland_score_fn();
        else if (body == "condorcet") base = condorcet_score_fn();
        else throw Error(Errc::BadInput, "unknown score function '" + body + "'");
        base = power_transform(std::move(base), k);
        if (cw) base = condorcet_augmented(std::move(base));
        return score_based_sds(std::move(base));
    }
    if (id.rfind("const:", 0) == 0) {
        std::string body = id.substr(6);
        if (body.size() < 2 || body.front() != '{' || body.back() != '}')
            throw Error(Errc::BadInput, "const rule expects const:{a,b}");
        std::vector<std::string> names;
        std::stringstream ss(body.substr(1, body.size() - 2));
        std::string part;
        while (std::getline(ss, part, ',')) names.push_back(part);
        return constant_rule(std::move(names));
    }
    if (id.rfind("dict:", 0) == 0) return dictatorial_rule(std::stoi(id.substr(5)));
    if (id.rfind("bidict:", 0) == 0) {
        std::string body = id.substr(7);
        auto comma = body.find(',');
        if (comma == std::string::npos) throw Error(Errc::BadInput, "bidict expects bidict:i,j");
        return bidictatorial_rule(std::stoi(body.substr(0, comma)), std::stoi(body.substr(comma + 1)));
    }
    if (id.rfind("table:", 0) == 0) return table_rule(load_table(id.substr(6)));
    throw Error(Errc::BadInput, "unknown rule identifier '" + id + "'");
}

}  // namespace sds
