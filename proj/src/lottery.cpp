#include "sds/lottery.hpp"

#include <algorithm>

namespace sds {

Lottery::Lottery(std::vector<Rat> probs) : p_(std::move(probs)) {
    Rat total(0);
    for (const Rat& r : p_) {
        if (r.sign() < 0) throw Error(Errc::BadInput, "negative probability");
        total += r;
    }
    if (total != Rat(1)) throw Error(Errc::BadInput, "probabilities sum to " + total.str());
}

Lottery Lottery::point(int m, Alt x) {
    std::vector<Rat> p(m, Rat(0));
    p[x] = Rat(1);
    return Lottery(std::move(p));
}

Lottery Lottery::even_chance(int m, AltSet members) {
    int k = set_size(members);
    if (k == 0) throw Error(Errc::BadInput, "even-chance set must be non-empty");
    std::vector<Rat> p(m, Rat(0));
    for (Alt a : set_members(members)) p[a] = Rat(1, k);
    return Lottery(std::move(p));
}

Lottery Lottery::uniform(int m) { return even_chance(m, full_set(m)); }

Rat Lottery::mass(AltSet xs) const {
    Rat total(0);
    for (Alt a = 0; a < m(); ++a)
        if (set_has(xs, a)) total += p_[a];
    return total;
}

AltSet Lottery::support() const {
    AltSet s = 0;
    for (Alt a = 0; a < m(); ++a)
        if (p_[a].sign() > 0) s |= AltSet(1) << a;
    return s;
}

bool Lottery::is_even_chance() const {
    AltSet s = support();
    Rat share(1, set_size(s));
    for (Alt a : set_members(s))
        if (p_[a] != share) return false;
    return true;
}

std::string Lottery::to_json(const std::vector<std::string>& names) const {
    std::string out = "{";
    for (Alt a = 0; a < m(); ++a) {
        if (a) out += ", ";
        out += '"' + names[a] + "\": \"" + p_[a].str() + '"';
    }
    return out + "}";
}

SdOrd sd_compare(const WeakOrder& order, const Lottery& p, const Lottery& q) {
    if (p.m() != order.m() || q.m() != order.m())
        throw Error(Errc::BadInput, "lottery universe mismatch");
    bool p_ahead = false, q_ahead = false;
    Rat pu(0), qu(0);
    for (int k = 0; k < order.num_classes(); ++k) {
        for (Alt a : order.class_members(k)) {
            pu += p[a];
            qu += q[a];
        }
        if (pu > qu) p_ahead = true;
        else if (qu > pu) q_ahead = true;
        if (p_ahead && q_ahead) return SdOrd::Incomparable;
    }
    if (p_ahead) return SdOrd::PStrictlyPreferred;
    if (q_ahead) return SdOrd::QStrictlyPreferred;
    return SdOrd::Equal;
}

bool is_manipulation(const WeakOrder& order, const Lottery& truthful, const Lottery& deviant) {
    return sd_compare(order, deviant, truthful) == SdOrd::PStrictlyPreferred;
}

SdOrd compare_sets(const WeakOrder& order, AltSet x, AltSet y) {
    int nx = set_size(x), ny = set_size(y);
    if (nx == 0 || ny == 0) throw Error(Errc::BadInput, "empty choice set");
    bool x_ahead = false, y_ahead = false;
    for (int k = 0; k < order.num_classes(); ++k) {
        AltSet u = order.class_prefix(k);
        // |X n U|/|X| vs |Y n U|/|Y|, cross-multiplied.
        long lhs = static_cast<long>(set_size(x & u)) * ny;
        long rhs = static_cast<long>(set_size(y & u)) * nx;
        if (lhs > rhs) x_ahead = true;
        else if (rhs > lhs) y_ahead = true;
        if (x_ahead && y_ahead) return SdOrd::Incomparable;
    }
    if (x_ahead) return SdOrd::PStrictlyPreferred;
    if (y_ahead) return SdOrd::QStrictlyPreferred;
    return SdOrd::Equal;
}

bool is_set_manipulation(const WeakOrder& order, AltSet truthful, AltSet deviant) {
    return compare_sets(order, deviant, truthful) == SdOrd::PStrictlyPreferred;
}

}  // namespace sds
