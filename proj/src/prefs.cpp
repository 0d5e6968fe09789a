#include "sds/prefs.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace sds {

std::vector<Alt> set_members(AltSet s) {
    std::vector<Alt> out;
    for (Alt a = 0; s >> a; ++a)
        if (set_has(s, a)) out.push_back(a);
    return out;
}

// --- WeakOrder --------------------------------------------------------------

void WeakOrder::rebuild() {
    num_classes_ = 0;
    for (int r : rank_) num_classes_ = std::max(num_classes_, r + 1);
    prefix_.assign(num_classes_, 0);
    for (Alt a = 0; a < m(); ++a) prefix_[rank_[a]] |= AltSet(1) << a;
    for (int k = 1; k < num_classes_; ++k) prefix_[k] |= prefix_[k - 1];
}

WeakOrder WeakOrder::from_ranks(std::vector<int> ranks) {
    WeakOrder o;
    int m = static_cast<int>(ranks.size());
    std::vector<char> seen(m, 0);
    int top = -1;
    for (int r : ranks) {
        if (r < 0 || r >= m) throw Error(Errc::BadInput, "rank out of range");
        seen[r] = 1;
        top = std::max(top, r);
    }
    for (int k = 0; k <= top; ++k)
        if (!seen[k]) throw Error(Errc::BadInput, "ranks not dense");
    o.rank_ = std::move(ranks);
    o.rebuild();
    return o;
}

WeakOrder WeakOrder::from_classes(const std::vector<std::vector<Alt>>& classes, int m) {
    std::vector<int> ranks(m, -1);
    for (size_t k = 0; k < classes.size(); ++k) {
        if (classes[k].empty()) throw Error(Errc::BadInput, "empty indifference class");
        for (Alt a : classes[k]) {
            if (a < 0 || a >= m) throw Error(Errc::BadInput, "alternative out of range");
            if (ranks[a] != -1) throw Error(Errc::DuplicateAlternative, "duplicate alternative in order");
            ranks[a] = static_cast<int>(k);
        }
    }
    for (Alt a = 0; a < m; ++a)
        if (ranks[a] == -1) throw Error(Errc::MissingAlternative, "order does not cover all alternatives");
    return from_ranks(std::move(ranks));
}

WeakOrder WeakOrder::strict(const std::vector<Alt>& top_to_bottom) {
    std::vector<int> ranks(top_to_bottom.size(), -1);
    for (size_t k = 0; k < top_to_bottom.size(); ++k) {
        Alt a = top_to_bottom[k];
        if (a < 0 || a >= static_cast<Alt>(top_to_bottom.size()) || ranks[a] != -1)
            throw Error(Errc::BadInput, "not a permutation");
        ranks[a] = static_cast<int>(k);
    }
    return from_ranks(std::move(ranks));
}

std::vector<Alt> WeakOrder::class_members(int k) const {
    std::vector<Alt> out;
    for (Alt a = 0; a < m(); ++a)
        if (rank_[a] == k) out.push_back(a);
    return out;
}

AltSet WeakOrder::upper_contour(Alt x) const { return prefix_[rank_[x]]; }

AltSet WeakOrder::tops() const { return prefix_[0]; }

// --- Permutation -------------------------------------------------------------

Permutation Permutation::identity(Kind k, int n) {
    Permutation p;
    p.kind = k;
    p.map.resize(n);
    std::iota(p.map.begin(), p.map.end(), 0);
    return p;
}

bool Permutation::is_valid() const {
    std::vector<char> seen(map.size(), 0);
    for (int v : map) {
        if (v < 0 || v >= static_cast<int>(map.size()) || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.kind = kind;
    p.map.resize(map.size());
    for (size_t i = 0; i < map.size(); ++i) p.map[map[i]] = static_cast<int>(i);
    return p;
}

// --- MajorityMargins ---------------------------------------------------------

std::string MajorityMargins::key() const {
    std::string s;
    for (int v : v_) {
        s += std::to_string(v);
        s += ',';
    }
    return s;
}

// --- Profile -----------------------------------------------------------------

Profile::Profile(std::shared_ptr<const std::vector<std::string>> names,
                 std::vector<WeakOrder> voters)
    : names_(std::move(names)), voters_(std::move(voters)) {
    if (!names_ || names_->empty()) throw Error(Errc::BadInput, "profile needs a universe");
    if (voters_.empty()) throw Error(Errc::BadInput, "profile needs at least one voter");
    m_ = static_cast<int>(names_->size());
    for (const auto& v : voters_)
        if (v.m() != m_) throw Error(Errc::BadInput, "voter order over wrong universe");
}

std::shared_ptr<const std::vector<std::string>> Profile::default_names(int m) {
    auto v = std::make_shared<std::vector<std::string>>();
    for (int i = 0; i < m; ++i) v->push_back(std::string(1, static_cast<char>('a' + i)));
    return v;
}

bool Profile::is_strict() const {
    return std::all_of(voters_.begin(), voters_.end(),
                       [](const WeakOrder& o) { return o.is_strict(); });
}

Profile Profile::with_voter(int i, WeakOrder o) const {
    std::vector<WeakOrder> vs = voters_;
    vs[i] = std::move(o);
    return Profile(names_, std::move(vs));
}

Profile Profile::with_appended(const std::vector<WeakOrder>& extra) const {
    std::vector<WeakOrder> vs = voters_;
    vs.insert(vs.end(), extra.begin(), extra.end());
    return Profile(names_, std::move(vs));
}

Alt Profile::alt_by_name(const std::string& name) const {
    for (Alt a = 0; a < m_; ++a)
        if ((*names_)[a] == name) return a;
    throw Error(Errc::BadInput, "unknown alternative '" + name + "'");
}

bool Profile::operator==(const Profile& o) const {
    return m_ == o.m_ && voters_ == o.voters_ && *names_ == *o.names_;
}

std::string Profile::key() const {
    std::string s;
    for (const auto& v : voters_) {
        for (int r : v.ranks()) {
            s += static_cast<char>('0' + r);
        }
        s += '|';
    }
    return s;
}

// --- Parsing -----------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& line;
    int lineno;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::ParseError, msg, lineno, static_cast<int>(pos) + 1);
    }
    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= line.size();
    }
    char peek() const { return pos < line.size() ? line[pos] : '\0'; }
    bool eat(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string token() {
        skip_ws();
        size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != ',' &&
               line[pos] != ':' && line[pos] != '{' && line[pos] != '}' && line[pos] != '#')
            ++pos;
        if (pos == start) fail("expected a name");
        return line.substr(start, pos - start);
    }
};

std::string strip_comment(const std::string& line) {
    auto h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

WeakOrder parse_order_on(Cursor& c, const std::vector<std::string>& names) {
    auto alt_of = [&](const std::string& tok) -> Alt {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == tok) return static_cast<Alt>(i);
        c.fail("unknown alternative '" + tok + "'");
    };
    std::vector<std::vector<Alt>> classes;
    while (true) {
        std::vector<Alt> cls;
        if (c.eat('{')) {
            while (true) {
                cls.push_back(alt_of(c.token()));
                if (c.eat('}')) break;
                if (!c.eat(',')) c.fail("expected ',' or '}' in indifference class");
            }
        } else {
            cls.push_back(alt_of(c.token()));
        }
        classes.push_back(std::move(cls));
        if (!c.eat(',')) break;
    }
    if (!c.done()) c.fail("trailing input after order");
    try {
        return WeakOrder::from_classes(classes, static_cast<int>(names.size()));
    } catch (const Error& e) {
        throw Error(e.code, std::string(e.what()), c.lineno, 1);
    }
}

}  // namespace

WeakOrder parse_order(const std::string& text, const std::vector<std::string>& names) {
    Cursor c{text, 1};
    return parse_order_on(c, names);
}

Profile parse_profile(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    std::shared_ptr<std::vector<std::string>> names;
    std::map<int, WeakOrder> by_id;

    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string line = strip_comment(raw);
        Cursor c{line, lineno};
        if (c.done()) continue;

        if (!names) {
            std::string head = c.token();
            if (head != "alts" || !c.eat(':'))
                c.fail("expected 'alts:' header");
            names = std::make_shared<std::vector<std::string>>();
            while (!c.done()) {
                std::string tok = c.token();
                if (std::find(names->begin(), names->end(), tok) != names->end())
                    c.fail("duplicate alternative name '" + tok + "'");
                names->push_back(tok);
            }
            if (names->size() < 2) c.fail("need at least two alternatives");
            continue;
        }

        // Voter line: "<id>:" or "<lo>..<hi>:".
        std::string idtok = c.token();
        int lo = 0, hi = 0;
        auto dots = idtok.find("..");
        try {
            if (dots == std::string::npos) {
                lo = hi = std::stoi(idtok);
            } else {
                lo = std::stoi(idtok.substr(0, dots));
                hi = std::stoi(idtok.substr(dots + 2));
            }
        } catch (const std::exception&) {
            c.fail("bad voter id '" + idtok + "'");
        }
        if (!c.eat(':')) c.fail("expected ':' after voter id");
        if (lo < 1 || hi < lo) c.fail("bad voter id range");
        WeakOrder order = parse_order_on(c, *names);
        for (int id = lo; id <= hi; ++id) {
            if (by_id.count(id))
                c.fail("voter " + std::to_string(id) + " defined twice");
            by_id.emplace(id, order);
        }
    }

    if (!names) throw Error(Errc::ParseError, "missing 'alts:' header", lineno, 1);
    if (by_id.empty()) throw Error(Errc::ParseError, "no voters", lineno, 1);
    int n = static_cast<int>(by_id.size());
    std::vector<WeakOrder> voters;
    for (int id = 1; id <= n; ++id) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw Error(Errc::ParseError, "voter ids must cover 1.." + std::to_string(n) +
                                              " (missing " + std::to_string(id) + ")");
        voters.push_back(it->second);
    }
    return Profile(names, std::move(voters));
}

Profile load_profile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::BadInput, "cannot open profile file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return parse_profile(ss.str());
    } catch (Error& e) {
        throw Error(e.code, path + ": " + e.what(), e.line, e.col);
    }
}

std::string order_to_string(const WeakOrder& o, const std::vector<std::string>& names) {
    std::string s;
    for (int k = 0; k < o.num_classes(); ++k) {
        if (k) s += ',';
        auto cls = o.class_members(k);
        if (cls.size() == 1) {
            s += names[cls[0]];
        } else {
            s += '{';
            for (size_t i = 0; i < cls.size(); ++i) {
                if (i) s += ',';
                s += names[cls[i]];
            }
            s += '}';
        }
    }
    return s;
}

std::string set_to_string(AltSet s, const std::vector<std::string>& names) {
    std::string out = "{";
    bool first = true;
    for (Alt a : set_members(s)) {
        if (!first) out += ',';
        out += names[a];
        first = false;
    }
    return out + "}";
}

std::string serialize_profile(const Profile& p) {
    std::string s = "alts:";
    for (const auto& n : p.names()) {
        s += ' ';
        s += n;
    }
    s += '\n';
    for (int i = 0; i < p.n(); ++i) {
        s += std::to_string(i + 1);
        s += ": ";
        s += order_to_string(p.voter(i), p.names());
        s += '\n';
    }
    return s;
}

std::string compact_profile(const Profile& p) {
    std::string s;
    for (int i = 0; i < p.n(); ++i) {
        if (i) s += '|';
        s += order_to_string(p.voter(i), p.names());
    }
    return s;
}

// --- Statistics ----------------------------------------------------------------

AltSet upper_contour(const WeakOrder& order, Alt x) { return order.upper_contour(x); }

AltSet tops(const WeakOrder& order) { return order.tops(); }

MajorityMargins majority_margins(const Profile& p) {
    MajorityMargins mm(p.m());
    for (int i = 0; i < p.n(); ++i) {
        const WeakOrder& o = p.voter(i);
        for (Alt x = 0; x < p.m(); ++x)
            for (Alt y = x + 1; y < p.m(); ++y) {
                int d = o.rank(x) < o.rank(y) ? 1 : (o.rank(x) > o.rank(y) ? -1 : 0);
                mm.at(x, y) += d;
                mm.at(y, x) -= d;
            }
    }
    return mm;
}

std::optional<Alt> condorcet_winner(const MajorityMargins& mm) {
    for (Alt x = 0; x < mm.m(); ++x) {
        bool wins = true;
        for (Alt y = 0; y < mm.m() && wins; ++y)
            if (y != x && mm(x, y) <= 0) wins = false;
        if (wins) return x;
    }
    return std::nullopt;
}

std::optional<Alt> condorcet_winner(const Profile& p) {
    return condorcet_winner(majority_margins(p));
}

std::vector<int> plurality_scores(const Profile& p) {
    std::vector<int> s(p.m(), 0);
    for (int i = 0; i < p.n(); ++i) {
        AltSet t = p.voter(i).tops();
        if (set_size(t) == 1) s[set_members(t)[0]] += 1;
    }
    return s;
}

std::vector<int> copeland_scores_doubled(const Profile& p) {
    MajorityMargins mm = majority_margins(p);
    std::vector<int> s(p.m(), 0);
    for (Alt x = 0; x < p.m(); ++x)
        for (Alt y = 0; y < p.m(); ++y) {
            if (y == x) continue;
            if (mm(x, y) > 0) s[x] += 2;
            else if (mm(x, y) == 0) s[x] += 1;
        }
    return s;
}

bool pareto_dominates(const Profile& p, Alt x, Alt y) {
    if (x == y) throw Error(Errc::BadInput, "pareto_dominates needs distinct alternatives");
    bool strict = false;
    for (int i = 0; i < p.n(); ++i) {
        if (!p.voter(i).weakly_prefers(x, y)) return false;
        if (p.voter(i).prefers(x, y)) strict = true;
    }
    return strict;
}

AltSet pareto_optimal_set(const Profile& p) {
    AltSet out = 0;
    for (Alt y = 0; y < p.m(); ++y) {
        bool dominated = false;
        for (Alt x = 0; x < p.m() && !dominated; ++x)
            if (x != y && pareto_dominates(p, x, y)) dominated = true;
        if (!dominated) out |= AltSet(1) << y;
    }
    return out;
}

AltSet omni_set(const Profile& p) {
    auto s = plurality_scores(p);
    AltSet out = 0;
    for (Alt a = 0; a < p.m(); ++a)
        if (s[a] > 0) out |= AltSet(1) << a;
    return out;
}

WeakOrder apply_alt_permutation(const WeakOrder& o, const Permutation& tau) {
    std::vector<int> ranks(o.m());
    for (Alt a = 0; a < o.m(); ++a) ranks[tau.map[a]] = o.rank(a);
    return WeakOrder::from_ranks(std::move(ranks));
}

AltSet apply_alt_permutation_set(AltSet s, const Permutation& tau) {
    AltSet out = 0;
    for (size_t a = 0; a < tau.map.size(); ++a)
        if (set_has(s, static_cast<Alt>(a))) out |= AltSet(1) << tau.map[a];
    return out;
}

Profile apply_permutation(const Profile& p, const Permutation& perm) {
    if (!perm.is_valid()) throw Error(Errc::BadInput, "invalid permutation");
    if (perm.kind == Permutation::Kind::Voters) {
        if (static_cast<int>(perm.map.size()) != p.n())
            throw Error(Errc::BadInput, "voter permutation has wrong size");
        std::vector<WeakOrder> vs(p.n());
        for (int i = 0; i < p.n(); ++i) vs[perm.map[i]] = p.voter(i);
        return Profile(p.names_ptr(), std::move(vs));
    }
    if (static_cast<int>(perm.map.size()) != p.m())
        throw Error(Errc::BadInput, "alternative permutation has wrong size");
    std::vector<WeakOrder> vs;
    vs.reserve(p.n());
    for (int i = 0; i < p.n(); ++i) vs.push_back(apply_alt_permutation(p.voter(i), perm));
    return Profile(p.names_ptr(), std::move(vs));
}

Profile adjacent_swap(const Profile& p, int voter, Alt x, Alt y) {
    const WeakOrder& o = p.voter(voter);
    int rx = o.rank(x), ry = o.rank(y);
    if (ry != rx + 1) throw Error(Errc::NotAdjacent, "alternatives are not in adjacent classes");
    if (o.class_members(rx).size() != 1 || o.class_members(ry).size() != 1)
        throw Error(Errc::NotAdjacent, "adjacent swap needs singleton classes");
    std::vector<int> ranks = o.ranks();
    std::swap(ranks[x], ranks[y]);
    return p.with_voter(voter, WeakOrder::from_ranks(std::move(ranks)));
}

// --- Enumeration ------------------------------------------------------------

std::vector<WeakOrder> all_orders(int m, OrderKind kind) {
    if (m < 2 || m > 8) throw Error(Errc::BadInput, "order enumeration supports 2 <= m <= 8");
    std::vector<WeakOrder> out;
    // Enumerate rank vectors in lexicographic order, keeping the dense ones.
    std::vector<int> v(m, 0);
    while (true) {
        int maxr = 0;
        for (int r : v) maxr = std::max(maxr, r);
        std::vector<char> seen(maxr + 1, 0);
        for (int r : v) seen[r] = 1;
        bool dense = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
        if (dense && (kind == OrderKind::Weak || maxr == m - 1))
            out.push_back(WeakOrder::from_ranks(v));
        int i = m - 1;
        while (i >= 0 && v[i] == m - 1) v[i--] = 0;
        if (i < 0) break;
        ++v[i];
    }
    return out;
}

std::shared_ptr<const std::vector<std::string>> DomainSpec::names_or_default() const {
    if (names) {
        if (static_cast<int>(names->size()) != m)
            throw Error(Errc::BadInput, "universe size does not match m");
        return names;
    }
    return Profile::default_names(m);
}

Domain::Domain(const DomainSpec& spec) : spec_(spec) {
    if (spec.n < 1) throw Error(Errc::BadInput, "need n >= 1");
    spec_.names = spec.names_or_default();
    orders_ = all_orders(spec.m, spec.kind);
    std::uint64_t k = orders_.size();
    std::uint64_t total = 1;
    for (int i = 0; i < spec.n; ++i) {
        if (total > spec.cap / k) {
            mpz_class exact;
            mpz_ui_pow_ui(exact.get_mpz_t(), static_cast<unsigned long>(k),
                          static_cast<unsigned long>(spec.n));
            throw Error(Errc::CapExceeded, "domain has " + exact.get_str() +
                                               " profiles, cap is " + std::to_string(spec.cap));
        }
        total *= k;
    }
    count_ = total;
    radix_.resize(spec.n);
    std::uint64_t r = 1;
    for (int i = spec.n - 1; i >= 0; --i) {
        radix_[i] = r;
        r *= k;
    }
}

std::vector<int> Domain::order_indices(std::uint64_t index) const {
    std::vector<int> oi(spec_.n);
    std::uint64_t k = orders_.size();
    for (int i = spec_.n - 1; i >= 0; --i) {
        oi[i] = static_cast<int>(index % k);
        index /= k;
    }
    return oi;
}

Profile Domain::profile(std::uint64_t index) const {
    auto oi = order_indices(index);
    std::vector<WeakOrder> vs;
    vs.reserve(spec_.n);
    for (int i = 0; i < spec_.n; ++i) vs.push_back(orders_[oi[i]]);
    return Profile(spec_.names, std::move(vs));
}

int Domain::order_index(const WeakOrder& o) const {
    auto it = std::lower_bound(orders_.begin(), orders_.end(), o);
    if (it == orders_.end() || !(*it == o)) return -1;
    return static_cast<int>(it - orders_.begin());
}

std::uint64_t Domain::index_of(const Profile& p) const {
    if (p.n() != spec_.n || p.m() != spec_.m)
        throw Error(Errc::MissingProfile, "profile shape does not match domain");
    std::uint64_t idx = 0;
    for (int i = 0; i < spec_.n; ++i) {
        int oi = order_index(p.voter(i));
        if (oi < 0) throw Error(Errc::MissingProfile, "voter order not in domain");
        idx += radix_[i] * static_cast<std::uint64_t>(oi);
    }
    return idx;
}

std::uint64_t Domain::neighbor(std::uint64_t index, int voter, int oi) const {
    std::uint64_t k = orders_.size();
    std::uint64_t cur = (index / radix_[voter]) % k;
    return index + (static_cast<std::uint64_t>(oi) - cur) * radix_[voter];
}

std::uint64_t factorial(int k) {
    std::uint64_t r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

std::vector<std::vector<int>> all_index_permutations(int k) {
    std::vector<int> v(k);
    std::iota(v.begin(), v.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

}  // namespace sds
