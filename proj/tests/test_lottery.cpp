#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sds/lottery.hpp"

using namespace sds;

namespace {

Lottery lot(std::vector<Rat> v) { return Lottery(std::move(v)); }

WeakOrder strict_abc() { return WeakOrder::strict({0, 1, 2}); }

/// Random lottery over m alternatives with denominator <= maxden.
Lottery random_lottery(std::mt19937& rng, int m, int maxden) {
    int den = 1 + static_cast<int>(rng() % maxden);
    std::vector<int> cuts;
    for (int i = 0; i < m - 1; ++i) cuts.push_back(static_cast<int>(rng() % (den + 1)));
    cuts.push_back(0);
    cuts.push_back(den);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rat> p;
    for (int i = 0; i + 1 < static_cast<int>(cuts.size()); ++i)
        p.push_back(Rat(cuts[i + 1] - cuts[i], den));
    return Lottery(std::move(p));
}

WeakOrder random_order(std::mt19937& rng, int m) {
    auto orders = all_orders(m, OrderKind::Weak);
    return orders[rng() % orders.size()];
}

}  // namespace

TEST_CASE("lottery basics") {
    CHECK_THROWS_AS(lot({Rat(1, 2), Rat(1, 3)}), Error);       // sums to 5/6
    CHECK_THROWS_AS(lot({Rat(3, 2), Rat(-1, 2)}), Error);      // negative entry
    Lottery u = Lottery::uniform(3);
    CHECK(u.mass(0b111) == Rat(1));
    CHECK(u.mass(0) == Rat(0));
    CHECK(u.mass(0b011) == Rat(2, 3));
    CHECK(lot({Rat(1, 2), Rat(0), Rat(1, 2)}).mass(0b011) == Rat(1, 2));

    CHECK(Lottery::even_chance(3, 0b001) == Lottery::point(3, 0));
    Lottery ec = Lottery::even_chance(5, 0b10011);
    CHECK(ec[0] == Rat(1, 3));
    CHECK(ec[2] == Rat(0));
    CHECK(Lottery::even_chance(5, 0b11111)[4] == Rat(1, 5));
    CHECK_THROWS_AS(Lottery::even_chance(3, 0), Error);

    CHECK(u.is_even_chance());
    CHECK(Lottery::point(4, 2).is_even_chance());
    CHECK_FALSE(lot({Rat(2, 3), Rat(1, 3), Rat(0)}).is_even_chance());

    CHECK(u.to_json({"a", "b", "c"}) ==
          "{\"a\": \"1/3\", \"b\": \"1/3\", \"c\": \"1/3\"}");
}

TEST_CASE("sd comparison") {
    WeakOrder o = strict_abc();
    Lottery third = Lottery::uniform(3);
    Lottery mid = Lottery::point(3, 1);
    // the classic incomparable pair: (1/3,1/3,1/3) vs point mass on the middle
    CHECK(sd_compare(o, third, mid) == SdOrd::Incomparable);
    CHECK(sd_compare(o, mid, third) == SdOrd::Incomparable);
    CHECK(sd_compare(o, third, third) == SdOrd::Equal);
    CHECK(sd_compare(o, Lottery::point(3, 0), mid) == SdOrd::PStrictlyPreferred);
    CHECK(sd_compare(o, mid, Lottery::point(3, 0)) == SdOrd::QStrictlyPreferred);

    // order e,d,c,a,b; even-chance {a,b,d,e} vs {a,b,c,e}: swapping c for d
    // improves the lottery for this voter
    WeakOrder v3 = WeakOrder::strict({4, 3, 2, 0, 1});
    Lottery withd = Lottery::even_chance(5, 0b11011);
    Lottery withc = Lottery::even_chance(5, 0b10111);
    CHECK(sd_compare(v3, withd, withc) == SdOrd::PStrictlyPreferred);
}

TEST_CASE("manipulation predicate") {
    WeakOrder o = strict_abc();
    Lottery third = Lottery::uniform(3);
    CHECK_FALSE(is_manipulation(o, third, third));
    CHECK_FALSE(is_manipulation(o, third, Lottery::point(3, 1)));
    CHECK_FALSE(is_manipulation(o, Lottery::point(3, 1), third));
    CHECK(is_manipulation(o, Lottery::point(3, 1), Lottery::point(3, 0)));
}

TEST_CASE("sd partial order properties") {
    std::mt19937 rng(42);
    for (int m : {3, 4}) {
        for (int t = 0; t < 3000; ++t) {
            WeakOrder o = random_order(rng, m);
            Lottery p = random_lottery(rng, m, 6);
            Lottery q = random_lottery(rng, m, 6);
            Lottery r = random_lottery(rng, m, 6);
            // antisymmetry
            SdOrd pq = sd_compare(o, p, q), qp = sd_compare(o, q, p);
            if (pq == SdOrd::PStrictlyPreferred) CHECK(qp == SdOrd::QStrictlyPreferred);
            if (pq == SdOrd::Equal) CHECK(qp == SdOrd::Equal);
            // transitivity of weak preference
            auto weakly = [&](const Lottery& x, const Lottery& y) {
                SdOrd c = sd_compare(o, x, y);
                return c == SdOrd::Equal || c == SdOrd::PStrictlyPreferred;
            };
            if (weakly(p, q) && weakly(q, r)) CHECK(weakly(p, r));
        }
    }
}

TEST_CASE("even-chance set comparison agrees with lottery comparison") {
    std::mt19937 rng(11);
    for (int m : {3, 4, 5}) {
        auto orders = all_orders(m, OrderKind::Weak);
        for (int t = 0; t < 2000; ++t) {
            const WeakOrder& o = orders[rng() % orders.size()];
            AltSet x = 1 + rng() % (full_set(m));
            AltSet y = 1 + rng() % (full_set(m));
            CHECK(compare_sets(o, x, y) ==
                  sd_compare(o, Lottery::even_chance(m, x), Lottery::even_chance(m, y)));
        }
    }
}

TEST_CASE("sd comparison is invariant under relabeling") {
    std::mt19937 rng(99);
    auto taus = all_index_permutations(4);
    for (int t = 0; t < 1000; ++t) {
        WeakOrder o = random_order(rng, 4);
        Lottery p = random_lottery(rng, 4, 5);
        Lottery q = random_lottery(rng, 4, 5);
        Permutation tau{Permutation::Kind::Alternatives, taus[rng() % taus.size()]};
        std::vector<Rat> pp(4, Rat(0)), qq(4, Rat(0));
        for (Alt a = 0; a < 4; ++a) {
            pp[tau.map[a]] = p[a];
            qq[tau.map[a]] = q[a];
        }
        CHECK(sd_compare(apply_alt_permutation(o, tau), Lottery(pp), Lottery(qq)) ==
              sd_compare(o, p, q));
    }
}
