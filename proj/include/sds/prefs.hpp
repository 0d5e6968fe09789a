#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sds/error.hpp"

namespace sds {

/// Alternatives are dense indices 0..m-1; display names live in the Profile's
/// shared universe (declaration order in the `alts:` header is canonical).
using Alt = int;

/// Subset of alternatives as a bitmask (bit i = alternative i). m <= 31.
using AltSet = std::uint32_t;

inline int set_size(AltSet s) { return __builtin_popcount(s); }
inline bool set_has(AltSet s, Alt a) { return (s >> a) & 1u; }
inline AltSet full_set(int m) { return (AltSet(1) << m) - 1u; }

std::vector<Alt> set_members(AltSet s);

/// Complete transitive preference relation, stored as ordered indifference
/// classes (first = most preferred). `rank[a]` is the class index of a; the
/// rank vector is the canonical encoding used for hashing and ordering.
class WeakOrder {
public:
    WeakOrder() = default;

    /// From ordered classes; they must partition 0..m-1.
    static WeakOrder from_classes(const std::vector<std::vector<Alt>>& classes, int m);

    /// From a rank vector (ranks must be dense 0..k-1).
    static WeakOrder from_ranks(std::vector<int> ranks);

    /// Strict order from a top-to-bottom permutation of 0..m-1.
    static WeakOrder strict(const std::vector<Alt>& top_to_bottom);

    int m() const { return static_cast<int>(rank_.size()); }
    int num_classes() const { return num_classes_; }
    int rank(Alt a) const { return rank_[a]; }
    const std::vector<int>& ranks() const { return rank_; }

    /// Members of class k, ascending.
    std::vector<Alt> class_members(int k) const;

    bool is_strict() const { return num_classes_ == m(); }

    bool prefers(Alt x, Alt y) const { return rank_[x] < rank_[y]; }          // x > y
    bool weakly_prefers(Alt x, Alt y) const { return rank_[x] <= rank_[y]; }  // x >= y
    bool indifferent(Alt x, Alt y) const { return rank_[x] == rank_[y]; }

    /// Upper contour set U(>=, x) = { y : y >= x }.
    AltSet upper_contour(Alt x) const;

    /// Most preferred class as a set.
    AltSet tops() const;

    /// Upper contour set of each class boundary: prefix(k) = classes 0..k.
    /// These are exactly the distinct upper contour sets of the order.
    AltSet class_prefix(int k) const { return prefix_[k]; }

    bool operator==(const WeakOrder& o) const { return rank_ == o.rank_; }
    bool operator!=(const WeakOrder& o) const { return rank_ != o.rank_; }
    bool operator<(const WeakOrder& o) const { return rank_ < o.rank_; }

private:
    std::vector<int> rank_;
    std::vector<AltSet> prefix_;  // prefix_[k] = union of classes 0..k
    int num_classes_ = 0;

    void rebuild();
};

/// Bijection on voter or alternative indices.
struct Permutation {
    enum class Kind { Alternatives, Voters };
    Kind kind = Kind::Alternatives;
    std::vector<int> map;  // map[i] = image of i

    static Permutation identity(Kind k, int n);
    bool is_valid() const;
    int size() const { return static_cast<int>(map.size()); }
    int apply(int i) const { return map[i]; }
    Permutation inverse() const;
};

/// Antisymmetric matrix of majority margins:
/// margin(x,y) = #{i : x >_i y} - #{i : y >_i x}.
class MajorityMargins {
public:
    MajorityMargins() = default;
    explicit MajorityMargins(int m) : m_(m), v_(static_cast<size_t>(m) * m, 0) {}

    int m() const { return m_; }
    int operator()(Alt x, Alt y) const { return v_[static_cast<size_t>(x) * m_ + y]; }
    int& at(Alt x, Alt y) { return v_[static_cast<size_t>(x) * m_ + y]; }

    bool operator==(const MajorityMargins& o) const { return m_ == o.m_ && v_ == o.v_; }

    /// Key usable in hash maps.
    std::string key() const;

private:
    int m_ = 0;
    std::vector<int> v_;
};

/// A preference profile: one weak order per voter over a shared universe.
/// Immutable after construction; copies are cheap-ish (orders are small,
/// names are shared).
class Profile {
public:
    Profile() = default;
    Profile(std::shared_ptr<const std::vector<std::string>> names,
            std::vector<WeakOrder> voters);

    /// Universe with default names a, b, c, ...
    static std::shared_ptr<const std::vector<std::string>> default_names(int m);

    int m() const { return m_; }
    int n() const { return static_cast<int>(voters_.size()); }
    const WeakOrder& voter(int i) const { return voters_[i]; }
    const std::vector<WeakOrder>& voters() const { return voters_; }
    const std::vector<std::string>& names() const { return *names_; }
    std::shared_ptr<const std::vector<std::string>> names_ptr() const { return names_; }

    bool is_strict() const;

    /// New profile with voter i's order replaced.
    Profile with_voter(int i, WeakOrder o) const;

    /// New profile with extra voters appended.
    Profile with_appended(const std::vector<WeakOrder>& extra) const;

    Alt alt_by_name(const std::string& name) const;  // throws BadInput if unknown

    bool operator==(const Profile& o) const;
    bool operator!=(const Profile& o) const { return !(*this == o); }

    /// Orders-only comparison key (deterministic across equal universes).
    std::string key() const;

private:
    int m_ = 0;
    std::shared_ptr<const std::vector<std::string>> names_;
    std::vector<WeakOrder> voters_;
};

// --- Parsing and serialization -------------------------------------------

/// Parses the profile text format:
///   alts: a b c
///   1: a,b,c
///   2..3: b,{a,c}
/// `#` starts a comment. Voter ids are 1-based in files and must cover
/// 1..n exactly; internally voters are 0-based. Throws Error with
/// line/column on syntax problems.
Profile parse_profile(const std::string& text);

/// Reads a profile file from disk.
Profile load_profile(const std::string& path);

/// Canonical serializer; parse_profile round-trips through this exactly.
std::string serialize_profile(const Profile& p);

/// One-line form "a,b,c|b,{a,c}" used as table keys and in reports.
std::string compact_profile(const Profile& p);

/// Parses a single order string like "b,{a,c}" against a universe.
WeakOrder parse_order(const std::string& text, const std::vector<std::string>& names);

std::string order_to_string(const WeakOrder& o, const std::vector<std::string>& names);
std::string set_to_string(AltSet s, const std::vector<std::string>& names);

// --- Profile statistics ---------------------------------------------------

AltSet upper_contour(const WeakOrder& order, Alt x);
AltSet tops(const WeakOrder& order);

MajorityMargins majority_margins(const Profile& p);
std::optional<Alt> condorcet_winner(const Profile& p);
std::optional<Alt> condorcet_winner(const MajorityMargins& mm);

/// Plurality scores; on weak profiles a voter counts toward x only when he
/// strictly prefers x to every other alternative (tied tops contribute to
/// nobody).
std::vector<int> plurality_scores(const Profile& p);

/// Copeland scores with ties weighted 1/2, returned as exact rationals
/// scaled by 2 to stay integral: copeland2[x] = 2*wins + ties.
std::vector<int> copeland_scores_doubled(const Profile& p);

bool pareto_dominates(const Profile& p, Alt x, Alt y);
AltSet pareto_optimal_set(const Profile& p);

/// OMNI(R) = alternatives with positive plurality score. May be empty on
/// weak profiles.
AltSet omni_set(const Profile& p);

Profile apply_permutation(const Profile& p, const Permutation& perm);
WeakOrder apply_alt_permutation(const WeakOrder& o, const Permutation& tau);
AltSet apply_alt_permutation_set(AltSet s, const Permutation& tau);

/// Profile where voter i's adjacent pair x >_i y (both singleton classes,
/// nothing strictly between) is exchanged. Throws NotAdjacent otherwise.
Profile adjacent_swap(const Profile& p, int voter, Alt x, Alt y);

// --- Domain enumeration ----------------------------------------------------

enum class OrderKind { Strict, Weak };

struct DomainSpec {
    int m = 0;
    int n = 0;
    OrderKind kind = OrderKind::Strict;
    std::shared_ptr<const std::vector<std::string>> names;  // default a,b,c,...
    std::uint64_t cap = 5'000'000;

    std::shared_ptr<const std::vector<std::string>> names_or_default() const;
};

/// Exhaustive, duplicate-free domain with deterministic lexicographic order:
/// orders sorted by rank-vector encoding, profiles by voter-wise product
/// (voter 0 most significant). Random access by index makes parallel
/// consumption and O(1) unilateral-deviation lookups possible.
class Domain {
public:
    explicit Domain(const DomainSpec& spec);  // throws CapExceeded

    const DomainSpec& spec() const { return spec_; }
    const std::vector<WeakOrder>& orders() const { return orders_; }
    int order_count() const { return static_cast<int>(orders_.size()); }
    std::uint64_t profile_count() const { return count_; }

    Profile profile(std::uint64_t index) const;
    std::vector<int> order_indices(std::uint64_t index) const;
    std::uint64_t index_of(const Profile& p) const;  // throws MissingProfile
    int order_index(const WeakOrder& o) const;       // -1 if absent

    /// Index of the profile equal to `index` except voter i uses order oi.
    std::uint64_t neighbor(std::uint64_t index, int voter, int oi) const;

private:
    DomainSpec spec_;
    std::vector<WeakOrder> orders_;
    std::vector<std::uint64_t> radix_;  // radix_[i] = orders^(n-1-i)
    std::uint64_t count_ = 0;
};

/// All weak (or strict) orders over m alternatives in canonical order.
std::vector<WeakOrder> all_orders(int m, OrderKind kind);

/// Small helpers shared by tests: factorial and all permutations of 0..k-1
/// in lexicographic order.
std::uint64_t factorial(int k);
std::vector<std::vector<int>> all_index_permutations(int k);

}  // namespace sds
