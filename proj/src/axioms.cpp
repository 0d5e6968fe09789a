#include "sds/axioms.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "sds/ratlp.hpp"

namespace sds {

using nlohmann::json;

namespace {

constexpr AltSet kEcBit = AltSet(1) << 31;

// --- Outcome storage ---------------------------------------------------------

/// One evaluated SDS output. Even-chance outputs live in a compact mask,
/// everything else in a side table; manipulation checks between two
/// even-chance outcomes run on integers only.
struct OutView {
    bool ec = false;
    AltSet mask = 0;
    const Lottery* lot = nullptr;

    Lottery materialize(int m) const { return ec ? Lottery::even_chance(m, mask) : *lot; }
};

OutView view_of(const Lottery& l, AltSet* scratch_mask) {
    OutView v;
    if (l.is_even_chance()) {
        v.ec = true;
        v.mask = l.support();
    } else {
        v.lot = &l;
    }
    (void)scratch_mask;
    return v;
}

class OutcomeTable {
public:
    OutcomeTable(const Sds& sds, const Domain& dom, int threads) : dom_(dom) {
        std::uint64_t count = dom.profile_count();
        masks_.assign(count, 0);
        int nt = std::max(1, threads);
        std::vector<std::thread> pool;
        std::vector<std::vector<std::pair<std::uint64_t, Lottery>>> extras(nt);
        std::vector<std::exception_ptr> errs(nt);
        std::uint64_t chunk = (count + nt - 1) / nt;
        for (int t = 0; t < nt; ++t) {
            pool.emplace_back([&, t] {
                try {
                    std::uint64_t lo = t * chunk, hi = std::min<std::uint64_t>(count, lo + chunk);
                    for (std::uint64_t i = lo; i < hi; ++i) {
                        Lottery l = sds(dom_.profile(i));
                        if (l.is_even_chance()) {
                            masks_[i] = l.support() | kEcBit;
                        } else {
                            extras[t].emplace_back(i, std::move(l));
                        }
                    }
                } catch (...) {
                    errs[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
        for (auto& ex : extras)
            for (auto& [i, l] : ex) general_.emplace(i, std::move(l));
    }

    OutView at(std::uint64_t idx) const {
        OutView v;
        if (masks_[idx] & kEcBit) {
            v.ec = true;
            v.mask = masks_[idx] & ~kEcBit;
        } else {
            v.lot = &general_.at(idx);
        }
        return v;
    }

private:
    const Domain& dom_;
    std::vector<AltSet> masks_;
    std::unordered_map<std::uint64_t, Lottery> general_;
};

bool outcomes_equal(int m, const OutView& a, const OutView& b) {
    if (a.ec && b.ec) return a.mask == b.mask;
    Lottery la = a.materialize(m), lb = b.materialize(m);
    return la == lb;
}

bool outcome_manipulation(int m, const WeakOrder& order, const OutView& truth,
                          const OutView& dev) {
    if (truth.ec && dev.ec) return is_set_manipulation(order, truth.mask, dev.mask);
    Lottery lt = truth.materialize(m), ld = dev.materialize(m);
    return is_manipulation(order, lt, ld);
}

SdOrd outcome_compare(int m, const WeakOrder& order, const OutView& p, const OutView& q) {
    if (p.ec && q.ec) return compare_sets(order, p.mask, q.mask);
    Lottery lp = p.materialize(m), lq = q.materialize(m);
    return sd_compare(order, lp, lq);
}

// --- Scan engine --------------------------------------------------------------

struct ProfileScanResult {
    std::vector<Witness> witnesses;       // empty when the profile is clean
    std::uint64_t devs_before_fail = 0;   // deviations tested before the first witness
};

using ScanFn = std::function<ProfileScanResult(std::uint64_t)>;

/// Runs `fn` over every profile index (or a deterministic sample), with the
/// first witness in canonical order winning across threads.
AxiomReport scan_all(std::string axiom, const Domain& dom, const CheckOptions& opts,
                     std::uint64_t devs_per_profile, const ScanFn& fn) {
    AxiomReport rep;
    rep.axiom = std::move(axiom);
    std::uint64_t count = dom.profile_count();

    if (opts.sample > 0) {
        rep.exhaustive = false;
        rep.note = "sampled";
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<std::uint64_t> pick(0, count - 1);
        for (std::uint64_t s = 0; s < opts.sample; ++s) {
            std::uint64_t idx = pick(rng);
            auto r = fn(idx);
            rep.checked.profiles++;
            if (!r.witnesses.empty()) {
                rep.checked.deviations += r.devs_before_fail + 1;
                rep.verdict = AxiomReport::Verdict::Fail;
                rep.witness = r.witnesses.front();
                if (opts.collect_all) {
                    for (auto& w : r.witnesses) rep.all_witnesses.push_back(w);
                    continue;
                }
                return rep;
            }
            rep.checked.deviations += devs_per_profile;
        }
        if (!rep.witness) rep.verdict = AxiomReport::Verdict::Pass;
        return rep;
    }

    if (opts.collect_all) {
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            auto r = fn(idx);
            rep.checked.profiles++;
            rep.checked.deviations += devs_per_profile;
            for (auto& w : r.witnesses) {
                if (!rep.witness) rep.witness = w;
                rep.all_witnesses.push_back(std::move(w));
            }
        }
        rep.verdict = rep.witness ? AxiomReport::Verdict::Fail : AxiomReport::Verdict::Pass;
        return rep;
    }

    int nt = std::max(1, opts.threads);
    std::atomic<std::uint64_t> best(UINT64_MAX);
    std::vector<std::optional<std::pair<std::uint64_t, ProfileScanResult>>> found(nt);
    std::vector<std::exception_ptr> errs(nt);
    std::uint64_t chunk = (count + nt - 1) / nt;
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                std::uint64_t lo = t * chunk, hi = std::min<std::uint64_t>(count, lo + chunk);
                for (std::uint64_t idx = lo; idx < hi; ++idx) {
                    if (idx > best.load(std::memory_order_relaxed)) break;
                    auto r = fn(idx);
                    if (!r.witnesses.empty()) {
                        found[t] = {idx, std::move(r)};
                        std::uint64_t cur = best.load();
                        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                        }
                        break;
                    }
                }
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);

    std::uint64_t win = UINT64_MAX;
    const ProfileScanResult* winner = nullptr;
    for (auto& f : found) {
        if (f && f->first < win) {
            win = f->first;
            winner = &f->second;
        }
    }
    if (winner) {
        rep.verdict = AxiomReport::Verdict::Fail;
        rep.witness = winner->witnesses.front();
        rep.checked.profiles = win + 1;
        rep.checked.deviations = win * devs_per_profile + winner->devs_before_fail + 1;
    } else {
        rep.verdict = AxiomReport::Verdict::Pass;
        rep.checked.profiles = count;
        rep.checked.deviations = count * devs_per_profile;
    }
    return rep;
}

/// Outcome access shared by the scans: a prebuilt table in exhaustive mode,
/// direct evaluation in sampled mode (the table would not fit or pay off).
class Audit {
public:
    Audit(const Sds& sds, const Domain& dom, const CheckOptions& opts)
        : sds_(sds), dom_(dom), tabled_(opts.sample == 0) {
        if (tabled_) table_.emplace(sds, dom, opts.threads);
    }

    /// Calls `use` with a view of the outcome at idx.
    template <typename Use>
    auto with_outcome(std::uint64_t idx, Use&& use) const {
        if (tabled_) return use(table_->at(idx));
        Lottery l = sds_(dom_.profile(idx));
        AltSet dummy;
        return use(view_of(l, &dummy));
    }

    const Domain& dom() const { return dom_; }

private:
    const Sds& sds_;
    const Domain& dom_;
    bool tabled_;
    std::optional<OutcomeTable> table_;
};

Domain make_domain(const DomainSpec& spec, const CheckOptions& opts) {
    DomainSpec s = spec;
    s.cap = opts.sample > 0 ? UINT64_MAX : opts.cap;
    return Domain(s);
}

AxiomReport aborted(std::string axiom, const std::string& why) {
    AxiomReport rep;
    rep.axiom = std::move(axiom);
    rep.verdict = AxiomReport::Verdict::Aborted;
    rep.note = why;
    return rep;
}

void require_domain(const Sds& sds, const DomainSpec& spec) {
    if (sds.domain == DomainKind::Strict && spec.kind == OrderKind::Weak)
        throw Error(Errc::DomainMismatch,
                    "rule '" + sds.name + "' rejects the weak-order domain");
}

/// Deviation-quantified checks share this loop: for every voter and every
/// replacement order, test the (truth, deviant) outcome pair.
template <typename Violation>
AxiomReport deviation_scan(const std::string& axiom, const Sds& sds, const DomainSpec& spec,
                           const CheckOptions& opts, Violation&& violation) {
    require_domain(sds, spec);
    std::optional<Domain> dom;
    try {
        dom.emplace(make_domain(spec, opts));
    } catch (const Error& e) {
        if (e.code == Errc::CapExceeded) return aborted(axiom, e.what());
        throw;
    }
    Audit audit(sds, *dom, opts);
    int k = dom->order_count();
    int n = spec.n, m = spec.m;
    std::uint64_t devs = static_cast<std::uint64_t>(n) * (k - 1);

    ScanFn fn = [&](std::uint64_t idx) {
        ProfileScanResult res;
        std::uint64_t tested = 0;
        auto ois = dom->order_indices(idx);
        audit.with_outcome(idx, [&](const OutView& truth) {
            for (int i = 0; i < n && (res.witnesses.empty() || opts.collect_all); ++i) {
                int cur = ois[i];
                const WeakOrder& torder = dom->orders()[cur];
                for (int oi = 0; oi < k; ++oi) {
                    if (oi == cur) continue;
                    std::uint64_t jdx = dom->neighbor(idx, i, oi);
                    bool bad = audit.with_outcome(jdx, [&](const OutView& dev) {
                        return violation(m, torder, truth, dev);
                    });
                    if (bad) {
                        Witness w;
                        w.profile = dom->profile(idx);
                        w.deviation_profile = dom->profile(jdx);
                        w.deviator = i;
                        w.truthful = truth.materialize(m);
                        w.deviant = audit.with_outcome(
                            jdx, [&](const OutView& dev) { return dev.materialize(m); });
                        res.witnesses.push_back(std::move(w));
                        if (res.witnesses.size() == 1) res.devs_before_fail = tested;
                        if (!opts.collect_all) return;
                    }
                    ++tested;
                }
            }
        });
        return res;
    };
    return scan_all(axiom, *dom, opts, devs, fn);
}

/// Per-profile checks (no deviations) share this loop.
AxiomReport profile_scan(const std::string& axiom, const Sds& sds, const DomainSpec& spec,
                         const CheckOptions& opts,
                         const std::function<std::optional<Witness>(const Profile&, const OutView&)>& test) {
    require_domain(sds, spec);
    std::optional<Domain> dom;
    try {
        dom.emplace(make_domain(spec, opts));
    } catch (const Error& e) {
        if (e.code == Errc::CapExceeded) return aborted(axiom, e.what());
        throw;
    }
    Audit audit(sds, *dom, opts);
    ScanFn fn = [&](std::uint64_t idx) {
        ProfileScanResult res;
        Profile p = dom->profile(idx);
        audit.with_outcome(idx, [&](const OutView& out) {
            auto w = test(p, out);
            if (w) res.witnesses.push_back(std::move(*w));
        });
        return res;
    };
    return scan_all(axiom, *dom, opts, 0, fn);
}

Rat outcome_mass(int m, const OutView& v, AltSet xs) {
    if (v.ec) return Rat(set_size(v.mask & xs), set_size(v.mask));
    return v.lot->mass(xs);
}

}  // namespace

// --- Reports ------------------------------------------------------------------

std::string AxiomReport::verdict_str() const {
    switch (verdict) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Aborted: return "ABORTED";
    }
    return "?";
}

std::string Witness::to_json() const {
    json j;
    j["profile"] = compact_profile(profile);
    if (deviation_profile) j["deviation_profile"] = compact_profile(*deviation_profile);
    if (deviator >= 0) j["deviator"] = deviator;
    if (truthful) j["truthful_lottery"] = json::parse(truthful->to_json(profile.names()));
    if (deviant) {
        const auto& nm =
            deviation_profile ? deviation_profile->names() : profile.names();
        j["deviant_lottery"] = json::parse(deviant->to_json(nm));
    }
    if (perm) {
        json p = json::array();
        for (int v : perm->map) p.push_back(v);
        j[perm->kind == Permutation::Kind::Alternatives ? "alt_permutation"
                                                        : "voter_permutation"] = p;
    }
    if (alt_x) j["alt_x"] = profile.names()[*alt_x];
    if (alt_y) j["alt_y"] = profile.names()[*alt_y];
    if (!detail.empty()) j["detail"] = detail;
    return j.dump();
}

std::string AxiomReport::to_json() const {
    json j;
    j["axiom"] = axiom;
    j["verdict"] = verdict_str();
    if (witness) j["witness"] = json::parse(witness->to_json());
    j["checked"] = {{"profiles", checked.profiles}, {"deviations", checked.deviations}};
    j["exhaustive"] = exhaustive;
    if (!note.empty()) j["note"] = note;
    if (!all_witnesses.empty()) {
        json arr = json::array();
        for (const auto& w : all_witnesses) arr.push_back(json::parse(w.to_json()));
        j["all_witnesses"] = arr;
    }
    return j.dump();
}

// --- Strategyproofness ----------------------------------------------------------

AxiomReport check_weak_sp(const Sds& sds, const DomainSpec& spec, const CheckOptions& opts) {
    return deviation_scan("weak-sp", sds, spec, opts,
                          [](int m, const WeakOrder& o, const OutView& truth, const OutView& dev) {
                              return outcome_manipulation(m, o, truth, dev);
                          });
}

AxiomReport check_strong_sp(const Sds& sds, const DomainSpec& spec, const CheckOptions& opts) {
    return deviation_scan("strong-sp", sds, spec, opts,
                          [](int m, const WeakOrder& o, const OutView& truth, const OutView& dev) {
                              SdOrd ord = outcome_compare(m, o, truth, dev);
                              return ord != SdOrd::Equal && ord != SdOrd::PStrictlyPreferred;
                          });
}

AxiomReport check_tops_only_monotonicity(const Sds& sds, const DomainSpec& spec,
                                         const CheckOptions& opts) {
    return deviation_scan(
        "tops-monotonicity", sds, spec, opts,
        [](int m, const WeakOrder& o, const OutView& truth, const OutView& dev) {
            if (outcomes_equal(m, truth, dev)) return false;
            AltSet t = o.tops();
            return !(outcome_mass(m, truth, t) > outcome_mass(m, dev, t));
        });
}

// --- Per-profile axioms -----------------------------------------------------------

AxiomReport check_ex_post_efficiency(const Sds& sds, const DomainSpec& spec,
                                     const CheckOptions& opts) {
    return profile_scan("ex-post", sds, spec, opts,
                        [](const Profile& p, const OutView& out) -> std::optional<Witness> {
                            for (Alt x = 0; x < p.m(); ++x) {
                                if (outcome_mass(p.m(), out, AltSet(1) << x).sign() <= 0) continue;
                                for (Alt y = 0; y < p.m(); ++y) {
                                    if (y != x && pareto_dominates(p, y, x)) {
                                        Witness w;
                                        w.profile = p;
                                        w.truthful = out.materialize(p.m());
                                        w.alt_x = x;
                                        w.alt_y = y;
                                        w.detail = "dominated alternative has positive probability";
                                        return w;
                                    }
                                }
                            }
                            return std::nullopt;
                        });
}

AxiomReport check_condorcet_consistency(const Sds& sds, const DomainSpec& spec,
                                        const CheckOptions& opts) {
    return profile_scan("cc", sds, spec, opts,
                        [](const Profile& p, const OutView& out) -> std::optional<Witness> {
                            auto cw = condorcet_winner(p);
                            if (!cw) return std::nullopt;
                            if (outcome_mass(p.m(), out, AltSet(1) << *cw) == Rat(1))
                                return std::nullopt;
                            Witness w;
                            w.profile = p;
                            w.truthful = out.materialize(p.m());
                            w.alt_x = *cw;
                            w.detail = "Condorcet winner not chosen with probability 1";
                            return w;
                        });
}

AxiomReport check_strong_condorcet_consistency(const Sds& sds, const DomainSpec& spec,
                                               const CheckOptions& opts) {
    AxiomReport rep = profile_scan(
        "strong-cc", sds, spec, opts,
        [](const Profile& p, const OutView& out) -> std::optional<Witness> {
            auto cw = condorcet_winner(p);
            if (cw && outcome_mass(p.m(), out, AltSet(1) << *cw) != Rat(1)) {
                Witness w;
                w.profile = p;
                w.truthful = out.materialize(p.m());
                w.alt_x = *cw;
                w.detail = "Condorcet winner not chosen with probability 1";
                return w;
            }
            for (Alt x = 0; x < p.m(); ++x) {
                if (outcome_mass(p.m(), out, AltSet(1) << x) == Rat(1) && (!cw || *cw != x)) {
                    Witness w;
                    w.profile = p;
                    w.truthful = out.materialize(p.m());
                    w.alt_x = x;
                    w.detail = "probability 1 on a non-Condorcet-winner";
                    return w;
                }
            }
            return std::nullopt;
        });
    return rep;
}

AxiomReport check_even_chance(const Sds& sds, const DomainSpec& spec, const CheckOptions& opts) {
    return profile_scan("even-chance", sds, spec, opts,
                        [](const Profile& p, const OutView& out) -> std::optional<Witness> {
                            if (out.ec) return std::nullopt;
                            Lottery l = out.materialize(p.m());
                            if (l.is_even_chance()) return std::nullopt;
                            Witness w;
                            w.profile = p;
                            w.truthful = l;
                            w.detail = "output is not uniform over its support";
                            return w;
                        });
}

AxiomReport check_sd_efficiency(const Sds& sds, const DomainSpec& spec, const CheckOptions& opts) {
    return profile_scan("sd-efficiency", sds, spec, opts,
                        [](const Profile& p, const OutView& out) -> std::optional<Witness> {
                            Lottery l = out.materialize(p.m());
                            auto q = sd_dominated(p, l);
                            if (!q) return std::nullopt;
                            Witness w;
                            w.profile = p;
                            w.truthful = l;
                            w.deviant = *q;
                            w.detail = "output lottery is ex ante dominated";
                            return w;
                        });
}

// --- Symmetry axioms ---------------------------------------------------------------

AxiomReport check_anonymity(const Sds& sds, const DomainSpec& spec, const CheckOptions& opts) {
    require_domain(sds, spec);
    std::optional<Domain> dom;
    try {
        dom.emplace(make_domain(spec, opts));
    } catch (const Error& e) {
        if (e.code == Errc::CapExceeded) return aborted("anonymity", e.what());
        throw;
    }
    Audit audit(sds, *dom, opts);
    auto perms = all_index_permutations(spec.n);
    int m = spec.m;
    std::uint64_t devs = perms.size() - 1;

    ScanFn fn = [&](std::uint64_t idx) {
        ProfileScanResult res;
        auto oi = dom->order_indices(idx);
        std::uint64_t tested = 0;
        for (size_t pi = 1; pi < perms.size(); ++pi) {  // perms[0] is the identity
            const auto& pm = perms[pi];
            std::vector<int> oj(spec.n);
            for (int i = 0; i < spec.n; ++i) oj[pm[i]] = oi[i];
            std::uint64_t jdx = 0;
            for (int i = 0; i < spec.n; ++i) jdx = audit.dom().neighbor(jdx, i, oj[i]);
            bool bad = audit.with_outcome(idx, [&](const OutView& a) {
                return audit.with_outcome(
                    jdx, [&](const OutView& b) { return !outcomes_equal(m, a, b); });
            });
            if (bad) {
                Witness w;
                w.profile = dom->profile(idx);
                w.deviation_profile = dom->profile(jdx);
                w.perm = Permutation{Permutation::Kind::Voters, pm};
                w.truthful = audit.with_outcome(
                    idx, [&](const OutView& a) { return a.materialize(m); });
                w.deviant = audit.with_outcome(
                    jdx, [&](const OutView& b) { return b.materialize(m); });
                w.detail = "voter permutation changes the lottery";
                res.witnesses.push_back(std::move(w));
                res.devs_before_fail = tested;
                if (!opts.collect_all) return res;
            }
            ++tested;
        }
        return res;
    };
    return scan_all("anonymity", *dom, opts, devs, fn);
}

AxiomReport check_neutrality(const Sds& sds, const DomainSpec& spec, const CheckOptions& opts) {
    require_domain(sds, spec);
    std::optional<Domain> dom;
    try {
        dom.emplace(make_domain(spec, opts));
    } catch (const Error& e) {
        if (e.code == Errc::CapExceeded) return aborted("neutrality", e.what());
        throw;
    }
    Audit audit(sds, *dom, opts);
    int m = spec.m;
    auto perms = all_index_permutations(m);
    // image_order[t][o] = index of tau_t applied to order o.
    std::vector<std::vector<int>> image(perms.size(), std::vector<int>(dom->order_count()));
    for (size_t t = 0; t < perms.size(); ++t) {
        Permutation tau{Permutation::Kind::Alternatives, perms[t]};
        for (int o = 0; o < dom->order_count(); ++o)
            image[t][o] = dom->order_index(apply_alt_permutation(dom->orders()[o], tau));
    }
    std::uint64_t devs = perms.size() - 1;

    ScanFn fn = [&](std::uint64_t idx) {
        ProfileScanResult res;
        auto oi = dom->order_indices(idx);
        std::uint64_t tested = 0;
        for (size_t t = 1; t < perms.size(); ++t) {
            Permutation tau{Permutation::Kind::Alternatives, perms[t]};
            std::uint64_t jdx = 0;
            for (int i = 0; i < spec.n; ++i) jdx = dom->neighbor(jdx, i, image[t][oi[i]]);
            bool bad = audit.with_outcome(idx, [&](const OutView& a) {
                return audit.with_outcome(jdx, [&](const OutView& b) {
                    if (a.ec && b.ec) return apply_alt_permutation_set(a.mask, tau) != b.mask;
                    Lottery la = a.materialize(m), lb = b.materialize(m);
                    for (Alt x = 0; x < m; ++x)
                        if (lb[tau.map[x]] != la[x]) return true;
                    return false;
                });
            });
            if (bad) {
                Witness w;
                w.profile = dom->profile(idx);
                w.deviation_profile = dom->profile(jdx);
                w.perm = tau;
                w.truthful = audit.with_outcome(
                    idx, [&](const OutView& a) { return a.materialize(m); });
                w.deviant = audit.with_outcome(
                    jdx, [&](const OutView& b) { return b.materialize(m); });
                w.detail = "alternative relabeling is not respected";
                res.witnesses.push_back(std::move(w));
                res.devs_before_fail = tested;
                if (!opts.collect_all) return res;
            }
            ++tested;
        }
        return res;
    };
    return scan_all("neutrality", *dom, opts, devs, fn);
}

// --- Informational-basis axioms ------------------------------------------------------

namespace {

/// Shared grouping scan: profiles with equal keys must get equal outcomes.
AxiomReport grouping_scan(const std::string& axiom, const Sds& sds, const DomainSpec& spec,
                          const CheckOptions& opts,
                          const std::function<std::string(const Profile&)>& key_of,
                          const std::string& detail) {
    require_domain(sds, spec);
    std::optional<Domain> dom;
    try {
        dom.emplace(make_domain(spec, opts));
    } catch (const Error& e) {
        if (e.code == Errc::CapExceeded) return aborted(axiom, e.what());
        throw;
    }
    Audit audit(sds, *dom, opts);
    AxiomReport rep;
    rep.axiom = axiom;
    std::unordered_map<std::string, std::uint64_t> rep_of;
    for (std::uint64_t idx = 0; idx < dom->profile_count(); ++idx) {
        Profile p = dom->profile(idx);
        rep.checked.profiles++;
        std::string key = key_of(p);
        auto [it, fresh] = rep_of.emplace(std::move(key), idx);
        if (fresh) continue;
        rep.checked.deviations++;
        std::uint64_t first = it->second;
        bool bad = audit.with_outcome(idx, [&](const OutView& a) {
            return audit.with_outcome(
                first, [&](const OutView& b) { return !outcomes_equal(spec.m, a, b); });
        });
        if (bad) {
            Witness w;
            w.profile = dom->profile(first);
            w.deviation_profile = p;
            w.truthful =
                audit.with_outcome(first, [&](const OutView& b) { return b.materialize(spec.m); });
            w.deviant =
                audit.with_outcome(idx, [&](const OutView& a) { return a.materialize(spec.m); });
            w.detail = detail;
            rep.witness = std::move(w);
            rep.verdict = AxiomReport::Verdict::Fail;
            if (!opts.collect_all) return rep;
            rep.all_witnesses.push_back(*rep.witness);
        }
    }
    rep.verdict = rep.witness ? AxiomReport::Verdict::Fail : AxiomReport::Verdict::Pass;
    return rep;
}

}  // namespace

AxiomReport check_tops_only(const Sds& sds, const DomainSpec& spec, const CheckOptions& opts) {
    return grouping_scan("tops-only", sds, spec, opts,
                         [](const Profile& p) {
                             std::string key;
                             for (int i = 0; i < p.n(); ++i)
                                 key += std::to_string(p.voter(i).tops()) + ",";
                             return key;
                         },
                         "profiles with identical tops get different lotteries");
}

AxiomReport check_pairwiseness(const Sds& sds, const DomainSpec& spec, const CheckOptions& opts) {
    AxiomReport rep = grouping_scan(
        "pairwise", sds, spec, opts,
        [](const Profile& p) { return majority_margins(p).key(); },
        "profiles with identical majority margins get different lotteries");
    if (rep.verdict != AxiomReport::Verdict::Pass) return rep;

    // Variable-electorate clause: appending a voter pair with mutually
    // reversed orders keeps the margins, so the outcome may not move.
    Domain dom(make_domain(spec, opts));
    for (std::uint64_t idx = 0; idx < dom.profile_count(); ++idx) {
        Profile p = dom.profile(idx);
        Lottery base = sds(p);
        for (const auto& o : dom.orders()) {
            std::vector<int> rev(o.ranks());
            int top = o.num_classes() - 1;
            for (auto& r : rev) r = top - r;
            Profile ext = p.with_appended({o, WeakOrder::from_ranks(std::move(rev))});
            rep.checked.deviations++;
            Lottery got = sds(ext);
            if (got != base) {
                Witness w;
                w.profile = p;
                w.deviation_profile = ext;
                w.truthful = base;
                w.deviant = got;
                w.detail = "appending an inverse voter pair changes the lottery";
                rep.witness = std::move(w);
                rep.verdict = AxiomReport::Verdict::Fail;
                return rep;
            }
        }
    }
    return rep;
}

// --- Score-function laws ---------------------------------------------------------------

AxiomReport check_score_function_laws(const ScoreFunction& sf, const DomainSpec& spec,
                                      bool include_gibbard_balance, const CheckOptions& opts) {
    if (spec.kind != OrderKind::Strict)
        throw Error(Errc::DomainMismatch, "score-function laws are stated on strict profiles");
    std::optional<Domain> dom;
    try {
        dom.emplace(make_domain(spec, opts));
    } catch (const Error& e) {
        if (e.code == Errc::CapExceeded) return aborted("score-laws", e.what());
        throw;
    }
    AxiomReport rep;
    rep.axiom = "score-laws";
    std::uint64_t count = dom->profile_count();
    int m = spec.m, n = spec.n, k = dom->order_count();

    // Score table, built in parallel.
    std::vector<std::vector<ScoreValue>> scores(count);
    {
        int nt = std::max(1, opts.threads);
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(nt);
        std::uint64_t chunk = (count + nt - 1) / nt;
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                try {
                    std::uint64_t lo = t * chunk, hi = std::min<std::uint64_t>(count, lo + chunk);
                    for (std::uint64_t i = lo; i < hi; ++i) scores[i] = sf(dom->profile(i));
                } catch (...) {
                    errs[t] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }

    // swapped[o][pos] = order index after exchanging the alternatives at
    // ranks pos and pos+1 of order o.
    std::vector<std::vector<int>> swapped(k, std::vector<int>(m - 1));
    std::vector<std::vector<Alt>> at_rank(k, std::vector<Alt>(m));
    for (int o = 0; o < k; ++o) {
        const WeakOrder& w = dom->orders()[o];
        for (Alt a = 0; a < m; ++a) at_rank[o][w.rank(a)] = a;
        for (int pos = 0; pos + 1 < m; ++pos) {
            std::vector<int> ranks = w.ranks();
            std::swap(ranks[at_rank[o][pos]], ranks[at_rank[o][pos + 1]]);
            swapped[o][pos] = dom->order_index(WeakOrder::from_ranks(std::move(ranks)));
        }
    }

    auto fail = [&](std::uint64_t idx, std::uint64_t jdx, int voter, Alt x, Alt y,
                    const std::string& law) {
        Witness w;
        w.profile = dom->profile(idx);
        if (jdx != UINT64_MAX) w.deviation_profile = dom->profile(jdx);
        w.deviator = voter;
        w.alt_x = x;
        w.alt_y = y;
        w.detail = law;
        rep.witness = std::move(w);
        rep.verdict = AxiomReport::Verdict::Fail;
    };

    for (std::uint64_t idx = 0; idx < count && !rep.witness; ++idx) {
        rep.checked.profiles++;
        const auto& sv = scores[idx];
        int infs = 0;
        for (Alt a = 0; a < m; ++a)
            if (sv[a].inf) ++infs;
        if (infs > 1) {
            fail(idx, UINT64_MAX, -1, -1, -1, "infinity-count");
            break;
        }
        auto oi = dom->order_indices(idx);
        for (int i = 0; i < n && !rep.witness; ++i) {
            for (int pos = 0; pos + 1 < m && !rep.witness; ++pos) {
                // x >_i y adjacent; the swap reinforces y against x.
                Alt x = at_rank[oi[i]][pos], y = at_rank[oi[i]][pos + 1];
                std::uint64_t jdx = dom->neighbor(idx, i, swapped[oi[i]][pos]);
                const auto& sw = scores[jdx];
                rep.checked.deviations++;
                for (Alt z = 0; z < m; ++z) {
                    if (z == x || z == y) continue;
                    if (sv[z] != sw[z]) {
                        fail(idx, jdx, i, x, y, "localizedness");
                        break;
                    }
                }
                if (rep.witness) break;
                if (!(sv[y] <= sw[y])) {
                    fail(idx, jdx, i, x, y, "monotonicity");
                    break;
                }
                bool y_exempt = sv[y].inf;
                bool x_exempt = sv[x].inf && (sv[y].inf || sv[y].v.sign() > 0);
                if (sv[y] == sw[y] && !y_exempt && !x_exempt && sv[x] != sw[x]) {
                    fail(idx, jdx, i, x, y, "balancedness");
                    break;
                }
                if (include_gibbard_balance) {
                    if (sv[x].inf || sv[y].inf || sw[x].inf || sw[y].inf) {
                        fail(idx, jdx, i, x, y, "gibbard-balance");
                        break;
                    }
                    if (sv[x].v - sw[x].v != sw[y].v - sv[y].v) {
                        fail(idx, jdx, i, x, y, "gibbard-balance");
                        break;
                    }
                }
            }
        }
    }
    if (!rep.witness) {
        rep.verdict = AxiomReport::Verdict::Pass;
    }
    return rep;
}

// --- Group power -----------------------------------------------------------------------

namespace {

GroupPowerReport group_power(const Sds& sds, const std::vector<int>& group,
                             const DomainSpec& spec, const CheckOptions& opts,
                             GroupPowerReport::Property prop) {
    require_domain(sds, spec);
    for (int g : group)
        if (g < 0 || g >= spec.n) throw Error(Errc::BadInput, "group member out of range");
    if (group.empty()) throw Error(Errc::BadInput, "empty group");

    GroupPowerReport rep;
    rep.group = group;
    rep.property = prop;

    std::vector<char> in_group(spec.n, 0);
    for (int g : group) in_group[g] = 1;
    std::vector<int> others;
    for (int i = 0; i < spec.n; ++i)
        if (!in_group[i]) others.push_back(i);

    auto orders = all_orders(spec.m, spec.kind);
    std::uint64_t k = orders.size();
    int slots = 1 + static_cast<int>(others.size());
    std::uint64_t total = 1;
    for (int s = 0; s < slots; ++s) {
        if (total > opts.cap / k)
            throw Error(Errc::CapExceeded, "group-power enumeration exceeds the cap");
        total *= k;
    }
    auto names = spec.names_or_default();

    rep.holds = true;
    std::vector<int> digits(slots, 0);
    for (std::uint64_t it = 0; it < total; ++it) {
        std::vector<WeakOrder> vs(spec.n);
        const WeakOrder& shared = orders[digits[0]];
        for (int g : group) vs[g] = shared;
        for (size_t j = 0; j < others.size(); ++j) vs[others[j]] = orders[digits[1 + j]];
        Profile p(names, std::move(vs));
        rep.checked.profiles++;
        Lottery out = sds(p);
        Rat mass = out.mass(shared.tops());
        bool ok = prop == GroupPowerReport::Property::Decisive ? mass == Rat(1) : mass.sign() > 0;
        if (!ok) {
            Witness w;
            w.profile = p;
            w.truthful = out;
            w.detail = prop == GroupPowerReport::Property::Decisive
                           ? "group tops do not absorb the lottery"
                           : "group tops get zero probability";
            rep.witness = std::move(w);
            rep.holds = false;
            return rep;
        }
        for (int s = slots - 1; s >= 0; --s) {
            if (++digits[s] < static_cast<int>(k)) break;
            digits[s] = 0;
        }
    }
    return rep;
}

}  // namespace

GroupPowerReport is_decisive(const Sds& sds, const std::vector<int>& group,
                             const DomainSpec& spec, const CheckOptions& opts) {
    return group_power(sds, group, spec, opts, GroupPowerReport::Property::Decisive);
}

GroupPowerReport is_nominating(const Sds& sds, const std::vector<int>& group,
                               const DomainSpec& spec, const CheckOptions& opts) {
    return group_power(sds, group, spec, opts, GroupPowerReport::Property::Nominating);
}

std::vector<int> weak_dictators(const Sds& sds, const DomainSpec& spec,
                                const CheckOptions& opts) {
    require_domain(sds, spec);
    Domain dom(make_domain(spec, opts));
    std::vector<char> alive(spec.n, 1);
    for (std::uint64_t idx = 0; idx < dom.profile_count(); ++idx) {
        Profile p = dom.profile(idx);
        Lottery out = sds(p);
        for (int i = 0; i < spec.n; ++i)
            if (alive[i] && out.mass(p.voter(i).tops()).sign() == 0) alive[i] = 0;
    }
    std::vector<int> res;
    for (int i = 0; i < spec.n; ++i)
        if (alive[i]) res.push_back(i);
    return res;
}

DictClassification classify_dictatorial(const Sds& sds, const DomainSpec& spec,
                                        const CheckOptions& opts) {
    require_domain(sds, spec);
    Domain dom(make_domain(spec, opts));
    int n = spec.n;
    std::vector<char> dict(n, 1);
    std::vector<std::vector<char>> bidict(n, std::vector<char>(n, 1));
    for (std::uint64_t idx = 0; idx < dom.profile_count(); ++idx) {
        Profile p = dom.profile(idx);
        Lottery out = sds(p);
        for (int i = 0; i < n; ++i) {
            if (dict[i] && out.mass(p.voter(i).tops()) != Rat(1)) dict[i] = 0;
            for (int j = i + 1; j < n; ++j)
                if (bidict[i][j] &&
                    out.mass(p.voter(i).tops() | p.voter(j).tops()) != Rat(1))
                    bidict[i][j] = 0;
        }
    }
    DictClassification res;
    for (int i = 0; i < n; ++i)
        if (dict[i]) {
            res.kind = DictClassification::Kind::Dictatorial;
            res.i = i;
            return res;
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (bidict[i][j]) {
                res.kind = DictClassification::Kind::Bidictatorial;
                res.i = i;
                res.j = j;
                return res;
            }
    return res;
}

std::string DictClassification::str() const {
    switch (kind) {
        case Kind::Dictatorial: return "DICTATORIAL(" + std::to_string(i) + ")";
        case Kind::Bidictatorial:
            return "BIDICTATORIAL(" + std::to_string(i) + "," + std::to_string(j) + ")";
        case Kind::Neither: return "NEITHER";
    }
    return "?";
}

// --- Witness replay ----------------------------------------------------------------------

bool verify_witness(const Sds& sds, const std::string& axiom, const Witness& w) {
    if (axiom == "weak-sp") {
        return is_manipulation(w.profile.voter(w.deviator), sds(w.profile),
                               sds(*w.deviation_profile));
    }
    if (axiom == "strong-sp") {
        SdOrd ord = sd_compare(w.profile.voter(w.deviator), sds(w.profile),
                               sds(*w.deviation_profile));
        return ord != SdOrd::Equal && ord != SdOrd::PStrictlyPreferred;
    }
    if (axiom == "tops-monotonicity") {
        Lottery a = sds(w.profile), b = sds(*w.deviation_profile);
        if (a == b) return false;
        AltSet t = w.profile.voter(w.deviator).tops();
        return !(a.mass(t) > b.mass(t));
    }
    if (axiom == "ex-post") {
        return pareto_dominates(w.profile, *w.alt_y, *w.alt_x) &&
               sds(w.profile)[*w.alt_x].sign() > 0;
    }
    if (axiom == "cc") {
        auto cw = condorcet_winner(w.profile);
        return cw && sds(w.profile)[*cw] != Rat(1);
    }
    if (axiom == "strong-cc") {
        auto cw = condorcet_winner(w.profile);
        if (cw && sds(w.profile)[*cw] != Rat(1)) return true;
        Lottery l = sds(w.profile);
        return l[*w.alt_x] == Rat(1) && (!cw || *cw != *w.alt_x);
    }
    if (axiom == "anonymity") {
        return sds(apply_permutation(w.profile, *w.perm)) != sds(w.profile);
    }
    if (axiom == "neutrality") {
        Lottery a = sds(w.profile), b = sds(apply_permutation(w.profile, *w.perm));
        for (Alt x = 0; x < w.profile.m(); ++x)
            if (b[w.perm->map[x]] != a[x]) return true;
        return false;
    }
    if (axiom == "even-chance") {
        return !sds(w.profile).is_even_chance();
    }
    if (axiom == "sd-efficiency") {
        Lottery l = sds(w.profile);
        bool strict = false;
        for (int i = 0; i < w.profile.n(); ++i) {
            SdOrd ord = sd_compare(w.profile.voter(i), *w.deviant, l);
            if (ord == SdOrd::QStrictlyPreferred || ord == SdOrd::Incomparable) return false;
            if (ord == SdOrd::PStrictlyPreferred) strict = true;
        }
        return strict;
    }
    if (axiom == "tops-only") {
        for (int i = 0; i < w.profile.n(); ++i)
            if (w.profile.voter(i).tops() != w.deviation_profile->voter(i).tops()) return false;
        return sds(w.profile) != sds(*w.deviation_profile);
    }
    if (axiom == "pairwise") {
        if (!(majority_margins(w.profile) == majority_margins(*w.deviation_profile)))
            return false;
        return sds(w.profile) != sds(*w.deviation_profile);
    }
    throw Error(Errc::BadInput, "no witness replay for axiom '" + axiom + "'");
}

AxiomReport run_axiom_check(const std::string& name, const Sds& sds, const DomainSpec& spec,
                            const CheckOptions& opts) {
    if (name == "weak-sp") return check_weak_sp(sds, spec, opts);
    if (name == "strong-sp") return check_strong_sp(sds, spec, opts);
    if (name == "ex-post") return check_ex_post_efficiency(sds, spec, opts);
    if (name == "cc") return check_condorcet_consistency(sds, spec, opts);
    if (name == "strong-cc") return check_strong_condorcet_consistency(sds, spec, opts);
    if (name == "anonymity") return check_anonymity(sds, spec, opts);
    if (name == "neutrality") return check_neutrality(sds, spec, opts);
    if (name == "pairwise") return check_pairwiseness(sds, spec, opts);
    if (name == "tops-only") return check_tops_only(sds, spec, opts);
    if (name == "even-chance") return check_even_chance(sds, spec, opts);
    if (name == "sd-efficiency") return check_sd_efficiency(sds, spec, opts);
    if (name == "tops-monotonicity") return check_tops_only_monotonicity(sds, spec, opts);
    throw Error(Errc::BadInput, "unknown axiom '" + name + "'");
}

std::vector<std::string> known_axioms() {
    return {"weak-sp",     "strong-sp",  "ex-post",       "cc",
            "strong-cc",   "anonymity",  "neutrality",    "pairwise",
            "tops-only",   "even-chance", "sd-efficiency", "tops-monotonicity"};
}

}  // namespace sds
