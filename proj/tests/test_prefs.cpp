#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "sds/prefs.hpp"

using namespace sds;

namespace {

Profile mk(const std::string& text) { return parse_profile(text); }

const char* kCycle3 = "alts: a b c\n1: a,b,c\n2: b,c,a\n3: c,a,b\n";
const char* kCw3 = "alts: a b c\n1: a,b,c\n2: a,c,b\n3: b,a,c\n";

}  // namespace

TEST_CASE("profile parsing") {
    Profile p = mk(kCycle3);
    CHECK(p.m() == 3);
    CHECK(p.n() == 3);
    CHECK(p.is_strict());
    CHECK(p.voter(0).rank(0) == 0);
    CHECK(p.voter(1).rank(0) == 2);  // voter 2 ranks a last

    Profile w = mk("alts: a b c\n1: a,{b,c}\n");
    CHECK(w.n() == 1);
    CHECK(w.voter(0).rank(0) == 0);
    CHECK(w.voter(0).rank(1) == 1);
    CHECK(w.voter(0).rank(2) == 1);
    CHECK_FALSE(w.is_strict());

    SUBCASE("duplicate alternative") {
        CHECK_THROWS_WITH_AS(mk("alts: a b\n1: a,a,b\n"), doctest::Contains("duplicate"),
                             Error);
    }
    SUBCASE("missing alternative") {
        try {
            mk("alts: a b c\n1: a,b\n");
            FAIL("expected error");
        } catch (const Error& e) {
            CHECK(e.code == Errc::MissingAlternative);
            CHECK(e.line == 2);
        }
    }
    SUBCASE("syntax error carries position") {
        try {
            mk("alts: a b c\n1 a,b,c\n");
            FAIL("expected error");
        } catch (const Error& e) {
            CHECK(e.code == Errc::ParseError);
            CHECK(e.line == 2);
            CHECK(e.col > 0);
        }
    }
    SUBCASE("id ranges and comments") {
        Profile q = mk("# majority profile\nalts: x y\n1..2: x,y\n3: y,x # minority\n");
        CHECK(q.n() == 3);
        CHECK(q.voter(0) == q.voter(1));
        CHECK(q.voter(2).rank(1) == 0);
    }
    SUBCASE("ids must cover 1..n") {
        CHECK_THROWS_AS(mk("alts: a b\n1: a,b\n3: b,a\n"), Error);
    }
}

TEST_CASE("serializer round trip") {
    for (const char* text : {kCycle3, kCw3, "alts: a b c d\n1: {a,b},c,d\n2: d,{a,b,c}\n"}) {
        Profile p = mk(text);
        CHECK(parse_profile(serialize_profile(p)) == p);
    }
    // Round trip over a whole enumerated weak domain.
    Domain dom(DomainSpec{3, 2, OrderKind::Weak});
    for (std::uint64_t i = 0; i < dom.profile_count(); ++i) {
        Profile p = dom.profile(i);
        CHECK(parse_profile(serialize_profile(p)) == p);
    }
}

TEST_CASE("upper contour and tops") {
    Profile p = mk("alts: a b c\n1: a,b,c\n2: a,{b,c}\n");
    CHECK(upper_contour(p.voter(0), 1) == 0b011);      // {a,b}
    CHECK(upper_contour(p.voter(1), 2) == 0b111);      // indifference class included
    CHECK(upper_contour(p.voter(0), 0) == 0b001);      // top element
    CHECK(tops(p.voter(0)) == 0b001);
    CHECK(tops(mk("alts: a b c\n1: {a,b},c\n").voter(0)) == 0b011);
    CHECK(tops(mk("alts: a b c\n1: {a,b,c}\n").voter(0)) == 0b111);
    // x >= y implies U(x) subseteq U(y)
    for (const auto& o : all_orders(3, OrderKind::Weak))
        for (Alt x = 0; x < 3; ++x)
            for (Alt y = 0; y < 3; ++y)
                if (o.weakly_prefers(x, y))
                    CHECK((o.upper_contour(x) & ~o.upper_contour(y)) == 0);
}

TEST_CASE("majority margins") {
    Profile cyc = mk(kCycle3);
    MajorityMargins mm = majority_margins(cyc);
    CHECK(mm(0, 1) == 1);
    CHECK(mm(1, 2) == 1);
    CHECK(mm(2, 0) == 1);

    Profile ind = mk("alts: a b c\n1: {a,b,c}\n");
    MajorityMargins zero = majority_margins(ind);
    for (Alt x = 0; x < 3; ++x)
        for (Alt y = 0; y < 3; ++y) CHECK(zero(x, y) == 0);

    SUBCASE("antisymmetry over a domain") {
        Domain dom(DomainSpec{3, 2, OrderKind::Weak});
        for (std::uint64_t i = 0; i < dom.profile_count(); ++i) {
            MajorityMargins m2 = majority_margins(dom.profile(i));
            for (Alt x = 0; x < 3; ++x) {
                CHECK(m2(x, x) == 0);
                for (Alt y = 0; y < 3; ++y) CHECK(m2(x, y) == -m2(y, x));
            }
        }
    }
    SUBCASE("appending an inverse pair keeps margins") {
        for (const auto& o : all_orders(3, OrderKind::Strict)) {
            std::vector<int> rev = o.ranks();
            for (auto& r : rev) r = 2 - r;
            Profile ext = cyc.with_appended({o, WeakOrder::from_ranks(std::move(rev))});
            CHECK(majority_margins(ext) == mm);
        }
    }
    SUBCASE("permutation equivariance") {
        Permutation tau{Permutation::Kind::Alternatives, {1, 2, 0}};
        MajorityMargins mt = majority_margins(apply_permutation(cyc, tau));
        for (Alt x = 0; x < 3; ++x)
            for (Alt y = 0; y < 3; ++y) CHECK(mt(tau.map[x], tau.map[y]) == mm(x, y));
    }
}

TEST_CASE("condorcet winner") {
    CHECK(condorcet_winner(mk(kCw3)) == 0);
    CHECK_FALSE(condorcet_winner(mk(kCycle3)).has_value());
    // odd strict profiles never have zero margins
    Domain dom(DomainSpec{3, 3, OrderKind::Strict});
    for (std::uint64_t i = 0; i < dom.profile_count(); ++i) {
        MajorityMargins mm = majority_margins(dom.profile(i));
        for (Alt x = 0; x < 3; ++x)
            for (Alt y = x + 1; y < 3; ++y) CHECK(mm(x, y) != 0);
    }
}

TEST_CASE("plurality and copeland scores") {
    Profile cyc = mk(kCycle3);
    CHECK(plurality_scores(cyc) == std::vector<int>{1, 1, 1});
    CHECK(plurality_scores(mk("alts: a b c\n1: a,b,c\n2: a,c,b\n3: b,a,c\n")) ==
          std::vector<int>{2, 1, 0});
    // a voter with tied tops contributes to nobody
    CHECK(plurality_scores(mk("alts: a b c\n1: {a,b},c\n")) == std::vector<int>{0, 0, 0});

    CHECK(copeland_scores_doubled(cyc) == std::vector<int>{2, 2, 2});
    CHECK(copeland_scores_doubled(mk(kCw3)) == std::vector<int>{4, 2, 0});
    CHECK(copeland_scores_doubled(mk("alts: a b\n1: a,b\n2: b,a\n")) == std::vector<int>{1, 1});

    SUBCASE("strict profiles: plurality sums to n") {
        Domain dom(DomainSpec{3, 3, OrderKind::Strict});
        for (std::uint64_t i = 0; i < dom.profile_count(); ++i) {
            auto s = plurality_scores(dom.profile(i));
            CHECK(s[0] + s[1] + s[2] == 3);
        }
    }
}

TEST_CASE("pareto dominance") {
    Profile un = mk("alts: a b c\n1..3: a,b,c\n");
    CHECK(pareto_dominates(un, 0, 1));
    CHECK(pareto_optimal_set(un) == 0b001);
    Profile cyc = mk(kCycle3);
    CHECK(pareto_optimal_set(cyc) == 0b111);
    CHECK_FALSE(pareto_dominates(cyc, 0, 1));
}

TEST_CASE("omni set") {
    CHECK(omni_set(mk(kCycle3)) == 0b111);
    CHECK(omni_set(mk("alts: a b c\n1..3: a,b,c\n")) == 0b001);
    CHECK(omni_set(mk("alts: a b c\n1: {a,b},c\n2: {b,c},a\n")) == 0);
}

TEST_CASE("permutations") {
    Profile p = mk("alts: a b c\n1: a,{b,c}\n");
    Permutation swap_ab{Permutation::Kind::Alternatives, {1, 0, 2}};
    Profile q = apply_permutation(p, swap_ab);
    CHECK(q == mk("alts: a b c\n1: b,{a,c}\n"));
    CHECK(apply_permutation(q, swap_ab) == p);

    Profile r = mk(kCycle3);
    Permutation idv = Permutation::identity(Permutation::Kind::Voters, 3);
    CHECK(apply_permutation(r, idv) == r);
    Permutation rot{Permutation::Kind::Voters, {1, 2, 0}};
    Profile rr = apply_permutation(r, rot);
    CHECK(rr.voter(1) == r.voter(0));
    CHECK(rr.voter(2) == r.voter(1));
    CHECK(rr.voter(0) == r.voter(2));
}

TEST_CASE("adjacent swap") {
    Profile p = mk("alts: a b c\n1: a,b,c\n");
    Profile q = adjacent_swap(p, 0, 0, 1);
    CHECK(q == mk("alts: a b c\n1: b,a,c\n"));
    CHECK(adjacent_swap(q, 0, 1, 0) == p);
    CHECK_THROWS_AS(adjacent_swap(p, 0, 0, 2), Error);  // not adjacent
    Profile w = mk("alts: a b c\n1: {a,b},c\n");
    CHECK_THROWS_AS(adjacent_swap(w, 0, 0, 2), Error);  // class not a singleton
}

TEST_CASE("domain enumeration") {
    CHECK(all_orders(3, OrderKind::Strict).size() == 6);
    CHECK(all_orders(3, OrderKind::Weak).size() == 13);
    CHECK(all_orders(4, OrderKind::Weak).size() == 75);
    CHECK(Domain(DomainSpec{3, 3, OrderKind::Strict}).profile_count() == 216);
    CHECK(Domain(DomainSpec{2, 1, OrderKind::Strict}).profile_count() == 2);
    CHECK(Domain(DomainSpec{3, 1, OrderKind::Weak}).profile_count() == 13);
    CHECK(Domain(DomainSpec{4, 3, OrderKind::Strict}).profile_count() == 13824);
    CHECK(Domain(DomainSpec{4, 2, OrderKind::Strict}).profile_count() == 576);

    SUBCASE("duplicate-free and index round trip") {
        Domain dom(DomainSpec{3, 2, OrderKind::Weak});
        std::set<std::string> seen;
        for (std::uint64_t i = 0; i < dom.profile_count(); ++i) {
            Profile p = dom.profile(i);
            CHECK(seen.insert(p.key()).second);
            CHECK(dom.index_of(p) == i);
        }
        CHECK(seen.size() == 169);
    }
    SUBCASE("neighbor arithmetic") {
        Domain dom(DomainSpec{3, 3, OrderKind::Strict});
        std::mt19937 rng(7);
        for (int t = 0; t < 200; ++t) {
            std::uint64_t idx = rng() % dom.profile_count();
            int voter = rng() % 3;
            int oi = rng() % dom.order_count();
            std::uint64_t jdx = dom.neighbor(idx, voter, oi);
            Profile q = dom.profile(idx).with_voter(voter, dom.orders()[oi]);
            CHECK(dom.index_of(q) == jdx);
        }
    }
    SUBCASE("cap") {
        DomainSpec s{5, 5, OrderKind::Strict};
        s.cap = 1000;
        CHECK_THROWS_AS((Domain{s}), Error);
    }
}
