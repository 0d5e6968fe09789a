#pragma once

#include <string>
#include <vector>

#include "sds/prefs.hpp"
#include "sds/rational.hpp"

namespace sds {

/// Probability distribution over alternatives 0..m-1. Exact rationals,
/// entries >= 0, sum exactly 1.
class Lottery {
public:
    Lottery() = default;
    explicit Lottery(std::vector<Rat> probs);  // validates

    /// Point mass on x.
    static Lottery point(int m, Alt x);
    /// Uniform 1/|X| over a non-empty set (even-chance lottery).
    static Lottery even_chance(int m, AltSet members);
    static Lottery uniform(int m);

    int m() const { return static_cast<int>(p_.size()); }
    const Rat& operator[](Alt a) const { return p_[a]; }
    const std::vector<Rat>& probs() const { return p_; }

    Rat mass(AltSet xs) const;
    AltSet support() const;

    /// True iff this lottery is uniform over its support.
    bool is_even_chance() const;

    bool operator==(const Lottery& o) const { return p_ == o.p_; }
    bool operator!=(const Lottery& o) const { return p_ != o.p_; }

    /// JSON rendering {"a": "1/3", ...} with reduced "num/den" strings.
    std::string to_json(const std::vector<std::string>& names) const;

private:
    std::vector<Rat> p_;
};

/// Result of a stochastic-dominance comparison under one voter's order.
enum class SdOrd {
    Equal,
    PStrictlyPreferred,
    QStrictlyPreferred,
    Incomparable,
};

/// Compares p against q by stochastic dominance under `order`: p >= q iff
/// p(U) >= q(U) on every upper contour set U. Only the class-boundary
/// prefixes are checked; they are exactly the distinct upper contour sets.
SdOrd sd_compare(const WeakOrder& order, const Lottery& p, const Lottery& q);

/// True iff the deviant lottery strictly SD-dominates the truthful one, i.e.
/// the deviation is a successful manipulation for a voter with this order.
bool is_manipulation(const WeakOrder& order, const Lottery& truthful, const Lottery& deviant);

/// Even-chance sets compared by the fractional rule |X n U|/|X| vs
/// |Y n U|/|Y| on every upper contour set; agrees with sd_compare on the
/// induced lotteries. Integer arithmetic only.
SdOrd compare_sets(const WeakOrder& order, AltSet x, AltSet y);

bool is_set_manipulation(const WeakOrder& order, AltSet truthful, AltSet deviant);

}  // namespace sds
