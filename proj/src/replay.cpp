#include "sds/replay.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sds {

// --- Margin-graph isomorphism ----------------------------------------------------

std::optional<Permutation> margin_isomorphism(const MajorityMargins& m1,
                                              const MajorityMargins& m2) {
    if (m1.m() != m2.m()) throw Error(Errc::BadInput, "margin matrices of different size");
    int m = m1.m();
    std::vector<int> tau(m);
    std::iota(tau.begin(), tau.end(), 0);
    do {
        bool ok = true;
        for (Alt x = 0; x < m && ok; ++x)
            for (Alt y = 0; y < m && ok; ++y)
                if (m2(x, y) != m1(tau[x], tau[y])) ok = false;
        if (ok) return Permutation{Permutation::Kind::Alternatives, tau};
    } while (std::next_permutation(tau.begin(), tau.end()));
    return std::nullopt;
}

// --- CSP instance ------------------------------------------------------------------

std::string unary_name(UnaryKind k) {
    switch (k) {
        case UnaryKind::ExPost: return "ex-post";
        case UnaryKind::Condorcet: return "condorcet";
        case UnaryKind::StrongCc: return "strong-cc";
        case UnaryKind::OnlyCwSingleton: return "only-cw-singleton";
        case UnaryKind::TiedPairsOnly: return "tied-pairs-only";
    }
    return "?";
}

UnaryKind unary_from_name(const std::string& s) {
    if (s == "ex-post") return UnaryKind::ExPost;
    if (s == "condorcet") return UnaryKind::Condorcet;
    if (s == "strong-cc") return UnaryKind::StrongCc;
    if (s == "only-cw-singleton") return UnaryKind::OnlyCwSingleton;
    if (s == "tied-pairs-only") return UnaryKind::TiedPairsOnly;
    throw Error(Errc::BadInput, "unknown unary constraint '" + s + "'");
}

int CspInstance::add_node(const std::string& name, Profile p) {
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].profile == p) {
            if (nodes[i].name != name &&
                std::find(nodes[i].aliases.begin(), nodes[i].aliases.end(), name) ==
                    nodes[i].aliases.end())
                nodes[i].aliases.push_back(name);
            return static_cast<int>(i);
        }
    }
    if (!alt_names) alt_names = p.names_ptr();
    nodes.push_back(CspNode{name, {}, std::move(p)});
    return static_cast<int>(nodes.size()) - 1;
}

int CspInstance::node_index(const std::string& name) const {
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].name == name) return static_cast<int>(i);
        for (const auto& a : nodes[i].aliases)
            if (a == name) return static_cast<int>(i);
    }
    return -1;
}

bool CspInstance::add_sp_edge(int from, int to) {
    if (from == to) return false;
    const Profile& a = nodes[from].profile;
    const Profile& b = nodes[to].profile;
    if (a.n() != b.n()) throw Error(Errc::BadInput, "deviation edge across electorates");
    int dev = -1;
    for (int i = 0; i < a.n(); ++i) {
        if (a.voter(i) == b.voter(i)) continue;
        if (dev >= 0)
            throw Error(Errc::BadInput, "edge profiles differ in more than one voter: " +
                                            nodes[from].name + " / " + nodes[to].name);
        dev = i;
    }
    if (dev < 0) throw Error(Errc::Internal, "edge profiles are identical");
    for (const auto& e : edges)
        if (e.kind == CspEdge::Kind::WeakSp &&
            ((e.from == from && e.to == to) || (e.from == to && e.to == from)))
            return true;  // already present
    CspEdge e;
    e.kind = CspEdge::Kind::WeakSp;
    e.from = from;
    e.to = to;
    e.deviator = dev;
    edges.push_back(e);
    return true;
}

void CspInstance::add_symmetry_edge(int from, int to, Permutation alt_perm,
                                    Permutation voter_perm) {
    Profile image = apply_permutation(apply_permutation(nodes[from].profile, voter_perm), alt_perm);
    if (!(image == nodes[to].profile))
        throw Error(Errc::BadInput, "symmetry edge permutations do not map " + nodes[from].name +
                                        " onto " + nodes[to].name);
    CspEdge e;
    e.kind = CspEdge::Kind::Symmetry;
    e.from = from;
    e.to = to;
    e.alt_perm = std::move(alt_perm);
    e.voter_perm = std::move(voter_perm);
    edges.push_back(e);
}

// --- CSP solving --------------------------------------------------------------------

namespace {

/// Value table: non-empty subsets ordered by size, then lexicographic rank
/// (numeric mask order coincides with member-list order).
std::vector<AltSet> value_order(int m) {
    std::vector<AltSet> vals;
    for (AltSet v = 1; v <= full_set(m); ++v) vals.push_back(v);
    std::stable_sort(vals.begin(), vals.end(), [](AltSet a, AltSet b) {
        if (set_size(a) != set_size(b)) return set_size(a) < set_size(b);
        return a < b;
    });
    return vals;
}

bool unary_allows(UnaryKind kind, const Profile& p, AltSet v) {
    switch (kind) {
        case UnaryKind::ExPost:
            return (v & ~pareto_optimal_set(p)) == 0;
        case UnaryKind::Condorcet: {
            auto cw = condorcet_winner(p);
            if (!cw) return true;
            return v == (AltSet(1) << *cw);
        }
        case UnaryKind::StrongCc: {
            auto cw = condorcet_winner(p);
            if (cw) return v == (AltSet(1) << *cw);
            return set_size(v) != 1;
        }
        case UnaryKind::OnlyCwSingleton: {
            if (set_size(v) != 1) return true;
            auto cw = condorcet_winner(p);
            return cw && v == (AltSet(1) << *cw);
        }
        case UnaryKind::TiedPairsOnly: {
            if (set_size(v) != 2) return true;
            auto mem = set_members(v);
            return majority_margins(p)(mem[0], mem[1]) == 0;
        }
    }
    return true;
}

struct CompiledCsp {
    int m = 0;
    std::vector<AltSet> vals;          // position -> value
    std::vector<std::uint64_t> unary;  // per node: bitmask over positions
    struct Edge {
        int from, to;
        std::vector<std::uint64_t> fwd;  // fwd[pos_from] = allowed to-positions
        std::vector<std::uint64_t> bwd;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<int>> incident;  // node -> edge indices
};

CompiledCsp compile(const CspInstance& inst) {
    CompiledCsp c;
    if (inst.nodes.empty()) throw Error(Errc::BadInput, "instance has no nodes");
    c.m = inst.nodes[0].profile.m();
    if (c.m > 12) throw Error(Errc::SizeLimit, "even-chance CSP supports m <= 12");
    c.vals = value_order(c.m);
    int nv = static_cast<int>(c.vals.size());

    c.unary.assign(inst.nodes.size(), 0);
    for (size_t i = 0; i < inst.nodes.size(); ++i) {
        std::uint64_t dom = 0;
        for (int pos = 0; pos < nv; ++pos) {
            bool ok = true;
            for (UnaryKind k : inst.unaries)
                if (!unary_allows(k, inst.nodes[i].profile, c.vals[pos])) {
                    ok = false;
                    break;
                }
            if (ok) dom |= std::uint64_t(1) << pos;
        }
        c.unary[i] = dom;
    }

    c.incident.assign(inst.nodes.size(), {});
    for (const auto& e : inst.edges) {
        CompiledCsp::Edge ce;
        ce.from = e.from;
        ce.to = e.to;
        ce.fwd.assign(nv, 0);
        ce.bwd.assign(nv, 0);
        if (e.kind == CspEdge::Kind::WeakSp) {
            const WeakOrder& of = inst.nodes[e.from].profile.voter(e.deviator);
            const WeakOrder& ot = inst.nodes[e.to].profile.voter(e.deviator);
            for (int pf = 0; pf < nv; ++pf)
                for (int pt = 0; pt < nv; ++pt) {
                    bool ok = !is_set_manipulation(of, c.vals[pf], c.vals[pt]) &&
                              !is_set_manipulation(ot, c.vals[pt], c.vals[pf]);
                    if (ok) {
                        ce.fwd[pf] |= std::uint64_t(1) << pt;
                        ce.bwd[pt] |= std::uint64_t(1) << pf;
                    }
                }
        } else {
            std::vector<int> pos_of(full_set(c.m) + 1, -1);
            for (int p = 0; p < nv; ++p) pos_of[c.vals[p]] = p;
            for (int pf = 0; pf < nv; ++pf) {
                int pt = pos_of[apply_alt_permutation_set(c.vals[pf], e.alt_perm)];
                ce.fwd[pf] |= std::uint64_t(1) << pt;
                ce.bwd[pt] |= std::uint64_t(1) << pf;
            }
        }
        int ei = static_cast<int>(c.edges.size());
        c.edges.push_back(std::move(ce));
        c.incident[e.from].push_back(ei);
        c.incident[e.to].push_back(ei);
    }
    return c;
}

class CspSearch {
public:
    CspSearch(const CompiledCsp& c, std::uint64_t budget) : c_(c), budget_(budget) {
        dom_ = c.unary;
    }

    CspResult::Status run() {
        if (!propagate_all()) return CspResult::Status::Unsat;
        return search() ? CspResult::Status::Sat
                        : (exhausted_ ? CspResult::Status::BudgetExceeded
                                      : CspResult::Status::Unsat);
    }

    std::vector<AltSet> assignment() const {
        std::vector<AltSet> out(dom_.size());
        for (size_t i = 0; i < dom_.size(); ++i)
            out[i] = c_.vals[__builtin_ctzll(dom_[i])];
        return out;
    }

    std::uint64_t nodes_used() const { return nodes_; }
    std::uint64_t wipeouts() const { return wipeouts_; }

private:
    const CompiledCsp& c_;
    std::uint64_t budget_;
    std::vector<std::uint64_t> dom_;
    std::vector<std::pair<int, std::uint64_t>> trail_;
    std::uint64_t nodes_ = 0, wipeouts_ = 0;
    bool exhausted_ = false;

    void set_dom(int node, std::uint64_t v) {
        trail_.emplace_back(node, dom_[node]);
        dom_[node] = v;
    }

    /// Arc consistency from a seed set of touched nodes (all when empty).
    bool propagate(std::vector<int> queue) {
        std::vector<char> queued(dom_.size(), 0);
        for (int q : queue) queued[q] = 1;
        while (!queue.empty()) {
            int node = queue.back();
            queue.pop_back();
            queued[node] = 0;
            for (int ei : c_.incident[node]) {
                const auto& e = c_.edges[ei];
                int other = e.from == node ? e.to : e.from;
                const auto& sup = e.from == node ? e.bwd : e.fwd;  // supports for `other`
                std::uint64_t nd = 0, od = dom_[other];
                std::uint64_t rest = od;
                while (rest) {
                    int pos = __builtin_ctzll(rest);
                    rest &= rest - 1;
                    if (sup[pos] & dom_[node]) nd |= std::uint64_t(1) << pos;
                }
                if (nd != od) {
                    if (!nd) {
                        ++wipeouts_;
                        return false;
                    }
                    set_dom(other, nd);
                    if (!queued[other]) {
                        queued[other] = 1;
                        queue.push_back(other);
                    }
                }
            }
        }
        return true;
    }

    bool propagate_all() {
        std::vector<int> all(dom_.size());
        std::iota(all.begin(), all.end(), 0);
        for (size_t i = 0; i < dom_.size(); ++i)
            if (!dom_[i]) return false;
        return propagate(all);
    }

    bool search() {
        int node = -1;
        for (size_t i = 0; i < dom_.size(); ++i)
            if (__builtin_popcountll(dom_[i]) > 1) {
                node = static_cast<int>(i);
                break;
            }
        if (node < 0) return true;
        std::uint64_t candidates = dom_[node];
        while (candidates) {
            int pos = __builtin_ctzll(candidates);
            candidates &= candidates - 1;
            if (++nodes_ > budget_) {
                exhausted_ = true;
                return false;
            }
            size_t mark = trail_.size();
            set_dom(node, std::uint64_t(1) << pos);
            if (propagate({node}) && search()) return true;
            if (exhausted_) return false;
            while (trail_.size() > mark) {
                dom_[trail_.back().first] = trail_.back().second;
                trail_.pop_back();
            }
        }
        return false;
    }
};

}  // namespace

bool verify_csp_assignment(const CspInstance& inst, const std::vector<AltSet>& assignment,
                           std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (assignment.size() != inst.nodes.size()) return fail("assignment size mismatch");
    for (size_t i = 0; i < inst.nodes.size(); ++i) {
        if (assignment[i] == 0) return fail("empty set at " + inst.nodes[i].name);
        for (UnaryKind k : inst.unaries)
            if (!unary_allows(k, inst.nodes[i].profile, assignment[i]))
                return fail(unary_name(k) + " violated at " + inst.nodes[i].name);
    }
    for (const auto& e : inst.edges) {
        int m = inst.nodes[e.from].profile.m();
        Lottery lf = Lottery::even_chance(m, assignment[e.from]);
        Lottery lt = Lottery::even_chance(m, assignment[e.to]);
        if (e.kind == CspEdge::Kind::WeakSp) {
            if (is_manipulation(inst.nodes[e.from].profile.voter(e.deviator), lf, lt))
                return fail("manipulation from " + inst.nodes[e.from].name + " to " +
                            inst.nodes[e.to].name);
            if (is_manipulation(inst.nodes[e.to].profile.voter(e.deviator), lt, lf))
                return fail("manipulation from " + inst.nodes[e.to].name + " to " +
                            inst.nodes[e.from].name);
        } else {
            if (apply_alt_permutation_set(assignment[e.from], e.alt_perm) != assignment[e.to])
                return fail("symmetry violated between " + inst.nodes[e.from].name + " and " +
                            inst.nodes[e.to].name);
        }
    }
    return true;
}

CspResult solve_csp(const CspInstance& inst, std::uint64_t budget) {
    CompiledCsp c = compile(inst);
    CspSearch s(c, budget);
    CspResult res;
    auto status = s.run();
    res.search_nodes = s.nodes_used();
    std::ostringstream trace;
    trace << inst.nodes.size() << " nodes, " << inst.edges.size() << " edges, "
          << s.nodes_used() << " assignments tried, " << s.wipeouts() << " wipeouts";
    res.trace = trace.str();
    switch (status) {
        case CspResult::Status::Sat: {
            res.status = CspResult::Status::Sat;
            res.assignment = s.assignment();
            std::string why;
            if (!verify_csp_assignment(inst, res.assignment, &why))
                throw Error(Errc::Internal, "solver returned an invalid assignment: " + why);
            break;
        }
        case CspResult::Status::Unsat:
            res.status = CspResult::Status::Unsat;
            break;
        case CspResult::Status::BudgetExceeded:
            res.status = CspResult::Status::BudgetExceeded;
            break;
    }
    return res;
}

// --- Lemma expansion -----------------------------------------------------------------

namespace {

/// Order with x first, y second, remaining alternatives keeping `like`'s
/// relative order.
WeakOrder top_two_order(const WeakOrder& like, Alt x, Alt y) {
    std::vector<Alt> rest;
    for (int k = 0; k < like.num_classes(); ++k)
        for (Alt a : like.class_members(k))
            if (a != x && a != y) rest.push_back(a);
    std::vector<Alt> seq{x, y};
    seq.insert(seq.end(), rest.begin(), rest.end());
    return WeakOrder::strict(seq);
}

WeakOrder top_one_order(const WeakOrder& like, Alt y) {
    std::vector<Alt> rest;
    for (int k = 0; k < like.num_classes(); ++k)
        for (Alt a : like.class_members(k))
            if (a != y) rest.push_back(a);
    std::vector<Alt> seq{y};
    seq.insert(seq.end(), rest.begin(), rest.end());
    return WeakOrder::strict(seq);
}

}  // namespace

CspInstance expand_lemma_unaries(const CspInstance& inst) {
    CspInstance out;
    out.name = inst.name + " (expanded)";
    out.expected = inst.expected;
    out.alt_names = inst.alt_names;
    out.edges.clear();
    bool had_lemma1 = false, had_lemma2 = false;
    for (UnaryKind k : inst.unaries) {
        if (k == UnaryKind::OnlyCwSingleton) had_lemma1 = true;
        else if (k == UnaryKind::TiedPairsOnly) had_lemma2 = true;
        else out.unaries.push_back(k);
    }
    for (const auto& n : inst.nodes) out.add_node(n.name, n.profile);
    for (size_t i = 0; i < inst.nodes.size(); ++i)
        for (const auto& a : inst.nodes[i].aliases) out.add_node(a, inst.nodes[i].profile);
    for (const auto& e : inst.edges) {
        if (e.kind == CspEdge::Kind::WeakSp) out.add_sp_edge(e.from, e.to);
        else out.add_symmetry_edge(e.from, e.to, e.alt_perm, e.voter_perm);
    }

    int base_count = static_cast<int>(inst.nodes.size());
    int m = inst.nodes[0].profile.m();

    for (int b = 0; b < base_count; ++b) {
        const Profile& p = inst.nodes[b].profile;
        const std::string& bn = inst.nodes[b].name;
        int n = p.n();
        MajorityMargins mm = majority_margins(p);
        int majority = n / 2 + 1;

        if (had_lemma1 && !condorcet_winner(mm)) {
            if (n % 2 == 0)
                throw Error(Errc::BadInput,
                            "expanding only-cw-singleton requires an odd electorate");
            // For every alternative x: a chain that forbids the singleton {x}.
            for (Alt x = 0; x < m; ++x) {
                Alt y = -1;
                for (Alt cand = 0; cand < m && y < 0; ++cand)
                    if (cand != x && mm(cand, x) > 0) y = cand;
                if (y < 0)
                    throw Error(Errc::Internal, "no majority beater for a non-winner");
                std::vector<int> backers;  // voters preferring y to x
                for (int i = 0; i < n && static_cast<int>(backers.size()) < majority; ++i)
                    if (p.voter(i).prefers(y, x)) backers.push_back(i);
                std::vector<char> in_i(n, 0);
                for (int i : backers) in_i[i] = 1;

                int prev = b;
                Profile cur = p;
                int step = 0;
                for (int i = 0; i < n; ++i) {
                    if (in_i[i]) continue;
                    cur = cur.with_voter(i, top_two_order(cur.voter(i), x, y));
                    int nd = out.add_node(bn + "/one" + p.names()[x] + std::to_string(++step), cur);
                    out.add_sp_edge(prev, nd);
                    prev = nd;
                }
                cur = cur.with_voter(backers[0], top_one_order(cur.voter(backers[0]), y));
                int nd = out.add_node(bn + "/one" + p.names()[x] + "f", cur);
                if (!condorcet_winner(cur) || *condorcet_winner(cur) != y)
                    throw Error(Errc::Internal, "chain tail lacks the intended winner");
                out.add_sp_edge(prev, nd);
            }
        }

        if (had_lemma2) {
            // For every strictly ordered pair: a chain that forbids {x,y}.
            for (Alt x = 0; x < m; ++x)
                for (Alt y = 0; y < m; ++y) {
                    if (x == y || mm(x, y) <= 0) continue;  // x beats y; forbid {x,y}
                    int prev = b;
                    Profile cur = p;
                    int step = 0;
                    for (int i = 0; i < n; ++i) {
                        const WeakOrder& o = cur.voter(i);
                        WeakOrder moved = o.prefers(x, y) ? top_two_order(o, x, y)
                                                          : top_two_order(o, y, x);
                        if (moved == o) continue;
                        cur = cur.with_voter(i, moved);
                        int nd = out.add_node(bn + "/pair" + p.names()[x] + p.names()[y] +
                                                  std::to_string(++step),
                                              cur);
                        out.add_sp_edge(prev, nd);
                        prev = nd;
                    }
                    if (!condorcet_winner(cur) || *condorcet_winner(cur) != x)
                        throw Error(Errc::Internal, "pair chain tail lacks the intended winner");
                }
        }
    }
    return out;
}

// --- Shipped instance generators ----------------------------------------------------------

namespace {

struct InstanceBuilder {
    CspInstance inst;
    std::shared_ptr<const std::vector<std::string>> names;
    int n = 0;

    Profile make(const std::vector<std::pair<std::vector<int>, std::string>>& groups) const {
        std::vector<WeakOrder> voters(n);
        std::vector<char> seen(n, 0);
        for (const auto& [ids, text] : groups) {
            WeakOrder o = parse_order(text, *names);
            for (int id : ids) {
                voters[id] = o;
                seen[id] = 1;
            }
        }
        for (int i = 0; i < n; ++i)
            if (!seen[i]) throw Error(Errc::Internal, "voter left unassigned");
        return Profile(names, std::move(voters));
    }
};

std::vector<int> range0(int lo, int hi) {  // 0-based [lo, hi]
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

}  // namespace

CspInstance thm3_instance(int n) {
    if (n < 5 || n % 2 == 0)
        throw Error(Errc::BadInput, "instance family needs odd n >= 5");
    InstanceBuilder b;
    b.names = Profile::default_names(5);
    b.n = n;
    b.inst.alt_names = b.names;
    b.inst.name = "even-chance Condorcet impossibility, n=" + std::to_string(n);
    b.inst.expected = "UNSAT";
    b.inst.unaries = {UnaryKind::ExPost, UnaryKind::Condorcet, UnaryKind::OnlyCwSingleton,
                      UnaryKind::TiedPairsOnly};

    // 1-based voter ids in comments; groups A = {4..(n+3)/2}, B = {(n+5)/2..n}.
    int a_lo = 3, a_hi = (n + 3) / 2 - 1;       // 0-based
    int b_lo = (n + 5) / 2 - 1, b_hi = n - 1;  // 0-based
    auto base = [&](const std::string& v1, const std::string& v2, const std::string& v3,
                    const std::string& ga, const std::string& gb) {
        return b.make({{{0}, v1}, {{1}, v2}, {{2}, v3}, {range0(a_lo, a_hi), ga},
                       {range0(b_lo, b_hi), gb}});
    };

    Profile r1 = base("b,e,d,c,a", "a,b,c,e,d", "e,d,c,a,b", "b,c,a,e,d", "e,d,a,b,c");
    int R1 = b.inst.add_node("R1", r1);
    int R2 = b.inst.add_node("R2", r1.with_voter(1, parse_order("b,a,c,e,d", *b.names)));
    int R3 = b.inst.add_node("R3", r1.with_voter(0, parse_order("e,b,d,c,a", *b.names)));
    b.inst.add_sp_edge(R1, R2);
    b.inst.add_sp_edge(R1, R3);

    // Case chain: group B deviates to a,e,d,b,c one voter at a time (last first).
    {
        Profile cur = r1;
        int prev = R1, step = 0;
        for (int i = b_hi; i >= b_lo; --i) {
            cur = cur.with_voter(i, parse_order("a,e,d,b,c", *b.names));
            int nd = b.inst.add_node(step == 0 ? "R4" : "R4c" + std::to_string(step), cur);
            ++step;
            b.inst.add_sp_edge(prev, nd);
            prev = nd;
        }
        int R5 = b.inst.add_node("R5", cur);
        int R6 = b.inst.add_node("R6", cur.with_voter(0, parse_order("b,e,d,a,c", *b.names)));
        b.inst.add_sp_edge(R5, R6);
    }

    // Case chain: group A deviates to c,b,a,e,d (first member first).
    {
        Profile cur = r1;
        int prev = R1, step = 0;
        for (int i = a_lo; i <= a_hi; ++i) {
            cur = cur.with_voter(i, parse_order("c,b,a,e,d", *b.names));
            int nd = b.inst.add_node(step == 0 ? "R7" : "R7c" + std::to_string(step), cur);
            ++step;
            b.inst.add_sp_edge(prev, nd);
            prev = nd;
        }
        int R8 = b.inst.add_node("R8", cur);
        Profile r9 = cur.with_voter(1, parse_order("a,c,b,e,d", *b.names));
        int R9 = b.inst.add_node("R9", r9);
        int R10 = b.inst.add_node("R10", r9.with_voter(2, parse_order("c,e,d,a,b", *b.names)));
        b.inst.add_sp_edge(R8, R9);
        b.inst.add_sp_edge(R9, R10);
    }

    Profile rh1 = r1.with_voter(2, parse_order("d,a,e,b,c", *b.names));
    int RH1 = b.inst.add_node("RH1", rh1);
    b.inst.add_sp_edge(R1, RH1);
    int RH2 = b.inst.add_node("RH2", rh1.with_voter(1, parse_order("b,a,c,e,d", *b.names)));
    int RH3 = b.inst.add_node("RH3", rh1.with_voter(2, parse_order("a,d,e,b,c", *b.names)));
    b.inst.add_sp_edge(RH1, RH2);
    b.inst.add_sp_edge(RH1, RH3);

    {
        Profile cur = rh1;
        int prev = RH1, step = 0;
        for (int i = a_lo; i <= a_hi; ++i) {
            cur = cur.with_voter(i, parse_order("d,b,c,a,e", *b.names));
            int nd = b.inst.add_node(step == 0 ? "RH4" : "RH4c" + std::to_string(step), cur);
            ++step;
            b.inst.add_sp_edge(prev, nd);
            prev = nd;
        }
        int RH5 = b.inst.add_node("RH5", cur);
        int RH6 =
            b.inst.add_node("RH6", cur.with_voter(n - 1, parse_order("d,e,a,b,c", *b.names)));
        b.inst.add_sp_edge(RH5, RH6);
    }

    Profile rh7 = rh1.with_voter(2, parse_order("d,e,a,b,c", *b.names));
    int RH7 = b.inst.add_node("RH7", rh7);
    int RH8 = b.inst.add_node("RH8", rh7.with_voter(0, parse_order("e,b,d,c,a", *b.names)));
    b.inst.add_sp_edge(RH1, RH7);
    b.inst.add_sp_edge(RH7, RH8);

    return b.inst;
}

CspInstance even_n_proposition_instance() {
    InstanceBuilder b;
    b.names = Profile::default_names(5);
    b.n = 8;
    b.inst.alt_names = b.names;
    b.inst.name = "even-chance strong-Condorcet impossibility, n=8";
    b.inst.expected = "UNSAT";
    b.inst.unaries = {UnaryKind::ExPost, UnaryKind::StrongCc, UnaryKind::TiedPairsOnly};

    auto W = [&](const std::string& s) { return parse_order(s, *b.names); };
    Profile r1 = b.make({{{0, 1, 2}, "b,c,a,e,d"},
                         {{3, 4, 5}, "a,e,d,b,c"},
                         {{6}, "e,d,b,c,a"},
                         {{7}, "e,d,c,b,a"}});
    int R1 = b.inst.add_node("R1", r1);
    Profile rh1 = r1.with_voter(7, W("d,e,b,c,a"));
    int RH1 = b.inst.add_node("RH1", rh1);
    b.inst.add_sp_edge(R1, RH1);

    // Claim 1, case {b,d,e}: voters 6, 5, 4 (1-based) move to e,a,d,b,c.
    Profile rh2 = rh1.with_voter(5, W("e,a,d,b,c"));
    Profile rh3 = rh2.with_voter(4, W("e,a,d,b,c"));
    Profile rh4 = rh3.with_voter(3, W("e,a,d,b,c"));
    int RH2 = b.inst.add_node("RH2", rh2);
    int RH3 = b.inst.add_node("RH3", rh3);
    int RH4 = b.inst.add_node("RH4", rh4);
    b.inst.add_sp_edge(RH1, RH2);
    b.inst.add_sp_edge(RH2, RH3);
    b.inst.add_sp_edge(RH3, RH4);

    // Claim 1, case {a,d,e} by the symmetric argument: voters 1, 2 move to
    // a,b,c,e,d.
    Profile rhs1 = rh1.with_voter(0, W("a,b,c,e,d"));
    Profile rhs2 = rhs1.with_voter(1, W("a,b,c,e,d"));
    int RHs1 = b.inst.add_node("RH1sym1", rhs1);
    int RHs2 = b.inst.add_node("RH1sym2", rhs2);
    b.inst.add_sp_edge(RH1, RHs1);
    b.inst.add_sp_edge(RHs1, RHs2);

    // Claim 1, case {a,b,d}.
    Profile rh5 = rh1.with_voter(6, W("e,b,d,c,a"));
    Profile rh6 = rh5.with_voter(5, W("a,b,d,e,c"));
    Profile rh7 = rh6.with_voter(6, W("b,e,d,c,a"));
    int RH5 = b.inst.add_node("RH5", rh5);
    int RH6 = b.inst.add_node("RH6", rh6);
    int RH7 = b.inst.add_node("RH7", rh7);
    b.inst.add_sp_edge(RH1, RH5);
    b.inst.add_sp_edge(RH5, RH6);
    b.inst.add_sp_edge(RH6, RH7);

    // Claim 1, case {a,b,e}.
    Profile rh8 = rh1.with_voter(7, W("d,b,e,c,a"));
    Profile rh9 = rh8.with_voter(5, W("a,b,e,d,c"));
    Profile rh10 = rh9.with_voter(7, W("b,d,e,c,a"));
    int RH8 = b.inst.add_node("RH8", rh8);
    int RH9 = b.inst.add_node("RH9", rh9);
    int RH10 = b.inst.add_node("RH10", rh10);
    b.inst.add_sp_edge(RH1, RH8);
    b.inst.add_sp_edge(RH8, RH9);
    b.inst.add_sp_edge(RH9, RH10);

    // Claim 2, case {a,b,c}.
    Profile r2 = r1.with_voter(7, W("e,d,b,c,a"));
    int R2 = b.inst.add_node("R2", r2);
    b.inst.add_sp_edge(R1, R2);

    // Claim 2, case {b,c,e}: voters 6, 5, 4 swap a and e.
    Profile r3 = r1.with_voter(5, W("e,a,d,b,c"));
    Profile r4 = r3.with_voter(4, W("e,a,d,b,c"));
    Profile r5 = r4.with_voter(3, W("e,a,d,b,c"));
    int R3 = b.inst.add_node("R3", r3);
    int R4 = b.inst.add_node("R4", r4);
    int R5 = b.inst.add_node("R5", r5);
    b.inst.add_sp_edge(R1, R3);
    b.inst.add_sp_edge(R3, R4);
    b.inst.add_sp_edge(R4, R5);

    // Claim 2, case {a,c,e}: voters 1, 2 reinforce a against c, then against b.
    Profile r6 = r1.with_voter(0, W("b,a,c,e,d"));
    Profile r7 = r6.with_voter(1, W("b,a,c,e,d"));
    Profile r8 = r7.with_voter(0, W("a,b,c,e,d"));
    Profile r9 = r8.with_voter(1, W("a,b,c,e,d"));
    int R6 = b.inst.add_node("R6", r6);
    int R7 = b.inst.add_node("R7", r7);
    int R8 = b.inst.add_node("R8", r8);
    int R9 = b.inst.add_node("R9", r9);
    b.inst.add_sp_edge(R1, R6);
    b.inst.add_sp_edge(R6, R7);
    b.inst.add_sp_edge(R7, R8);
    b.inst.add_sp_edge(R8, R9);

    // Claim 2, case {a,b,e}.
    Profile r10 = r1.with_voter(7, W("e,d,c,a,b"));
    Profile r11 = r10.with_voter(6, W("e,d,a,b,c"));
    Profile r12 = r11.with_voter(0, W("b,e,a,c,d"));
    int R10 = b.inst.add_node("R10", r10);
    int R11 = b.inst.add_node("R11", r11);
    int R12 = b.inst.add_node("R12", r12);
    b.inst.add_sp_edge(R1, R10);
    b.inst.add_sp_edge(R10, R11);
    b.inst.add_sp_edge(R11, R12);
    b.inst.add_sp_edge(R10, RH1);

    return b.inst;
}

// --- Whole-domain search ---------------------------------------------------------------------

SearchResult full_domain_search(const std::vector<std::string>& axioms, const DomainSpec& spec,
                                std::uint64_t budget) {
    Domain dom(spec);
    CspInstance inst;
    inst.name = "full-domain search";
    inst.alt_names = dom.spec().names;
    bool anonymity = false, neutrality = false;
    for (const auto& a : axioms) {
        if (a == "weak-sp" || a == "even-chance") continue;
        if (a == "ex-post") inst.unaries.push_back(UnaryKind::ExPost);
        else if (a == "cc") inst.unaries.push_back(UnaryKind::Condorcet);
        else if (a == "strong-cc") inst.unaries.push_back(UnaryKind::StrongCc);
        else if (a == "anonymity") anonymity = true;
        else if (a == "neutrality") neutrality = true;
        else throw Error(Errc::BadInput, "full-domain search cannot encode axiom '" + a + "'");
    }

    std::uint64_t count = dom.profile_count();
    for (std::uint64_t idx = 0; idx < count; ++idx)
        inst.nodes.push_back(CspNode{"p" + std::to_string(idx), {}, dom.profile(idx)});

    int k = dom.order_count();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        auto oi = dom.order_indices(idx);
        for (int i = 0; i < spec.n; ++i)
            for (int o = oi[i] + 1; o < k; ++o) {
                CspEdge e;
                e.kind = CspEdge::Kind::WeakSp;
                e.from = static_cast<int>(idx);
                e.to = static_cast<int>(dom.neighbor(idx, i, o));
                e.deviator = i;
                inst.edges.push_back(e);
            }
    }
    if (anonymity) {
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            auto oi = dom.order_indices(idx);
            for (int i = 0; i + 1 < spec.n; ++i) {
                if (oi[i] == oi[i + 1]) continue;
                std::vector<int> map(spec.n);
                std::iota(map.begin(), map.end(), 0);
                std::swap(map[i], map[i + 1]);
                std::uint64_t jdx = dom.neighbor(dom.neighbor(idx, i, oi[i + 1]), i + 1, oi[i]);
                if (jdx < idx) continue;
                CspEdge e;
                e.kind = CspEdge::Kind::Symmetry;
                e.from = static_cast<int>(idx);
                e.to = static_cast<int>(jdx);
                e.alt_perm = Permutation::identity(Permutation::Kind::Alternatives, spec.m);
                e.voter_perm = Permutation{Permutation::Kind::Voters, map};
                inst.edges.push_back(e);
            }
        }
    }
    if (neutrality) {
        for (int j = 0; j + 1 < spec.m; ++j) {
            std::vector<int> map(spec.m);
            std::iota(map.begin(), map.end(), 0);
            std::swap(map[j], map[j + 1]);
            Permutation tau{Permutation::Kind::Alternatives, map};
            std::vector<int> img(k);
            for (int o = 0; o < k; ++o)
                img[o] = dom.order_index(apply_alt_permutation(dom.orders()[o], tau));
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                auto oi = dom.order_indices(idx);
                std::uint64_t jdx = 0;
                for (int i = 0; i < spec.n; ++i) jdx = dom.neighbor(jdx, i, img[oi[i]]);
                CspEdge e;
                e.kind = CspEdge::Kind::Symmetry;
                e.from = static_cast<int>(idx);
                e.to = static_cast<int>(jdx);
                e.alt_perm = tau;
                e.voter_perm = Permutation::identity(Permutation::Kind::Voters, spec.n);
                inst.edges.push_back(e);
            }
        }
    }

    CspResult res = solve_csp(inst, budget);
    SearchResult out;
    out.search_nodes = res.search_nodes;
    switch (res.status) {
        case CspResult::Status::Unsat:
            out.status = SearchResult::Status::Unsat;
            break;
        case CspResult::Status::BudgetExceeded:
            out.status = SearchResult::Status::BudgetExceeded;
            break;
        case CspResult::Status::Sat: {
            out.status = SearchResult::Status::Sat;
            auto table = std::make_shared<SdsTable>();
            table->domain = dom.spec();
            table->claims_even_chance = true;
            for (std::uint64_t idx = 0; idx < count; ++idx)
                table->entries.emplace(
                    compact_profile(dom.profile(idx)),
                    Lottery::even_chance(spec.m, res.assignment[idx]));
            out.table = std::move(table);
            break;
        }
    }
    return out;
}

}  // namespace sds
