#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sds/rules.hpp"

using namespace sds;

namespace {

Profile mk(const std::string& text) { return parse_profile(text); }

const char* kCycle3 = "alts: a b c\n1: a,b,c\n2: b,c,a\n3: c,a,b\n";
const char* kCw3 = "alts: a b c\n1: a,b,c\n2: a,c,b\n3: b,a,c\n";
const char* kTwoOne = "alts: a b c\n1: a,b,c\n2: a,c,b\n3: b,c,a\n";  // tops a,a,b

Lottery lot(std::vector<Rat> v) { return Lottery(std::move(v)); }

}  // namespace

TEST_CASE("score values") {
    ScoreValue inf = ScoreValue::infinity();
    ScoreValue two = ScoreValue::finite(Rat(2));
    CHECK(two <= inf);
    CHECK_FALSE(inf <= two);
    CHECK(inf.pow(3) == inf);
    CHECK(two.pow(3) == ScoreValue::finite(Rat(8)));
    CHECK_THROWS_AS(ScoreValue::finite(Rat(-1)), Error);
}

TEST_CASE("score functions on profiles") {
    Profile cyc = mk(kCycle3);
    auto sp = plurality_score_fn();
    auto sc = copeland_score_fn();
    CHECK(sp(cyc) == std::vector<ScoreValue>(3, ScoreValue::finite(Rat(1))));
    CHECK(sc(cyc) == std::vector<ScoreValue>(3, ScoreValue::finite(Rat(1))));
    Profile cw = mk(kCw3);
    CHECK(sc(cw) == std::vector<ScoreValue>{ScoreValue::finite(Rat(2)),
                                            ScoreValue::finite(Rat(1)),
                                            ScoreValue::finite(Rat(0))});
    Profile un = mk("alts: a b c\n1..3: a,b,c\n");
    CHECK(sp(un)[0] == ScoreValue::finite(Rat(3)));

    SUBCASE("powers") {
        auto sp2 = power_transform(plurality_score_fn(), 2);
        Profile two = mk(kTwoOne);
        CHECK(sp2(two) == std::vector<ScoreValue>{ScoreValue::finite(Rat(4)),
                                                  ScoreValue::finite(Rat(1)),
                                                  ScoreValue::finite(Rat(0))});
        auto sp1 = power_transform(plurality_score_fn(), 1);
        CHECK(sp1(two) == plurality_score_fn()(two));
        auto inf2 = power_transform(condorcet_score_fn(), 2);
        CHECK(inf2(cw)[0] == ScoreValue::infinity());
    }
    SUBCASE("condorcet augmentation") {
        auto aug = condorcet_augmented(power_transform(copeland_score_fn(), 2));
        CHECK(aug(cw)[0] == ScoreValue::infinity());
        CHECK(aug(cw)[1] == ScoreValue::finite(Rat(1)));
        CHECK(aug(cyc) == power_transform(copeland_score_fn(), 2)(cyc));
    }
    SUBCASE("weak profiles rejected") {
        CHECK_THROWS_AS(sp(mk("alts: a b c\n1: {a,b},c\n")), Error);
    }
}

TEST_CASE("score-based normalization") {
    Profile cw = mk(kCw3);
    Sds cop = score_based_sds(copeland_score_fn());
    CHECK(cop(cw) == lot({Rat(2, 3), Rat(1, 3), Rat(0)}));
    Sds cond = score_based_sds(condorcet_score_fn());
    CHECK(cond(cw) == Lottery::point(3, 0));
    CHECK(cond(mk(kCycle3)) == Lottery::uniform(3));

    SUBCASE("zero total score") {
        ScoreFunction zero{"zero", [](const Profile& p) {
                               return std::vector<ScoreValue>(p.m(), ScoreValue::finite(Rat(0)));
                           }};
        CHECK_THROWS_AS(score_based_sds(zero)(cw), Error);
    }
    SUBCASE("square plurality example") {
        Sds sp2 = score_based_sds(power_transform(plurality_score_fn(), 2));
        CHECK(sp2(mk(kTwoOne)) == lot({Rat(4, 5), Rat(1, 5), Rat(0)}));
    }
}

TEST_CASE("condorcet rule equals its score-based form") {
    Domain dom(DomainSpec{3, 3, OrderKind::Strict});
    Sds direct = condorcet_rule();
    Sds scored = score_based_sds(condorcet_score_fn());
    for (std::uint64_t i = 0; i < dom.profile_count(); ++i) {
        Profile p = dom.profile(i);
        CHECK(direct(p) == scored(p));
    }
    CHECK(direct(mk("alts: a b\n1: a,b\n2: b,a\n")) == lot({Rat(1, 2), Rat(1, 2)}));
}

TEST_CASE("omninomination rule") {
    Sds omni = omninomination_rule();
    CHECK(omni(mk(kCycle3)) == Lottery::uniform(3));
    CHECK(omni(mk("alts: a b c\n1..3: a,b,c\n")) == Lottery::point(3, 0));
    CHECK(omni(mk(kTwoOne)) == lot({Rat(1, 2), Rat(1, 2), Rat(0)}));
}

TEST_CASE("parameterized omninomination") {
    Sds f = parameterized_omninomination({2, 1});
    CHECK(f(mk(kTwoOne)) == Lottery::point(3, 0));        // plurality 2 meets theta1
    CHECK(f(mk(kCycle3)) == Lottery::uniform(3));         // |OMNI| = 3 > theta2
    Sds g = parameterized_omninomination({2, 2});
    CHECK(g(mk(kCycle3)) == Lottery::uniform(3));         // OMNI branch coincides here
    CHECK(g(mk(kTwoOne)) == Lottery::point(3, 0));

    CHECK_THROWS_AS(parameterized_omninomination({1, 1})(mk(kCycle3)), Error);
    CHECK_THROWS_AS(parameterized_omninomination({5, 1})(mk(kCycle3)), Error);
    CHECK_THROWS_AS(parameterized_omninomination({2, 3})(mk(kCycle3)), Error);  // theta2 > m-1

    SUBCASE("theta1 = n+1, theta2 = m-1 reproduces omninomination below full spread") {
        Domain dom(DomainSpec{3, 3, OrderKind::Strict});
        Sds h = parameterized_omninomination({4, 2});
        Sds omni = omninomination_rule();
        for (std::uint64_t i = 0; i < dom.profile_count(); ++i) {
            Profile p = dom.profile(i);
            if (set_size(omni_set(p)) <= 2) CHECK(h(p) == omni(p));
            else CHECK(h(p) == Lottery::uniform(3));
        }
    }
}

TEST_CASE("random dictatorships") {
    Sds rd = uniform_random_dictatorship();
    CHECK(rd(mk(kCycle3)) == Lottery::uniform(3));
    Sds d0 = random_dictatorship({Rat(1), Rat(0), Rat(0)});
    CHECK(d0(mk(kCycle3)) == Lottery::point(3, 0));
    Sds half = random_dictatorship({Rat(1, 2), Rat(1, 2), Rat(0)});
    CHECK(half(mk("alts: a b c\n1: a,b,c\n2: b,a,c\n3: c,a,b\n")) ==
          lot({Rat(1, 2), Rat(1, 2), Rat(0)}));
    CHECK_THROWS_AS(random_dictatorship({Rat(1, 2), Rat(1, 2), Rat(1, 2)}), Error);
    CHECK_THROWS_AS(d0(mk("alts: a b\n1: a,b\n2: b,a\n")), Error);  // wrong voter count
}

TEST_CASE("random serial dictatorship") {
    Sds rsd = random_serial_dictatorship();
    CHECK(rsd(mk("alts: a b c\n1: {a,b},c\n2: b,a,c\n")) == Lottery::point(3, 1));
    CHECK(rsd(mk("alts: a b c\n1: {a,b,c}\n2: {a,b,c}\n")) == Lottery::uniform(3));

    SUBCASE("equals uniform random dictatorship on strict profiles") {
        Domain dom(DomainSpec{3, 3, OrderKind::Strict});
        Sds rd = uniform_random_dictatorship();
        for (std::uint64_t i = 0; i < dom.profile_count(); ++i) {
            Profile p = dom.profile(i);
            CHECK(rsd(p) == rd(p));
        }
    }
    SUBCASE("tie refinement uses later dictators") {
        // sequence (1,2): voter 2 cannot separate {a,b}, residual tie splits;
        // sequence (2,1): voter 2 dictates c outright
        Profile p = mk("alts: a b c\n1: {a,b},c\n2: c,{a,b}\n");
        CHECK(rsd(p) == lot({Rat(1, 4), Rat(1, 4), Rat(1, 2)}));
    }
}

TEST_CASE("simple even-chance rules") {
    CHECK(uniform_pareto_rule()(mk("alts: a b c\n1..3: a,b,c\n")) == Lottery::point(3, 0));
    CHECK(dictatorial_rule(0)(mk("alts: a b c\n1: {a,b},c\n2: c,a,b\n")) ==
          lot({Rat(1, 2), Rat(1, 2), Rat(0)}));
    CHECK(bidictatorial_rule(0, 1)(mk("alts: a b c\n1: a,b,c\n2: b,a,c\n3: c,a,b\n")) ==
          lot({Rat(1, 2), Rat(1, 2), Rat(0)}));
    CHECK(constant_rule({"a", "b"})(mk(kCycle3)) == lot({Rat(1, 2), Rat(1, 2), Rat(0)}));
}

TEST_CASE("boundary rules") {
    Sds smalln = remark4_small_n_rule();
    CHECK(smalln(mk(kCw3)) == Lottery::point(3, 0));
    CHECK(smalln(mk(kCycle3)) == Lottery::uniform(3));
    CHECK_THROWS_AS(smalln(mk("alts: a b\n1: a,b\n2: a,b\n3: a,b\n4: a,b\n5: b,a\n")), Error);

    Sds smallm = remark4_small_m_rule();
    CHECK(smallm(mk(kCw3)) == Lottery::point(3, 0));
    // two alternatives top-ranked by exactly half of the voters
    Profile halfhalf = mk("alts: a b c d\n1: a,b,c,d\n2: a,c,d,b\n3: b,a,d,c\n4: b,d,a,c\n");
    CHECK(smallm(halfhalf) == lot({Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)}));
    CHECK_THROWS_AS(smallm(mk("alts: a b c d e\n1: a,b,c,d,e\n2: b,a,c,d,e\n3: c,a,b,d,e\n")),
                    Error);
}

TEST_CASE("table rules") {
    Domain dom(DomainSpec{3, 3, OrderKind::Strict});
    auto table = std::make_shared<SdsTable>();
    table->domain = dom.spec();
    Sds cond = condorcet_rule();
    for (std::uint64_t i = 0; i < dom.profile_count(); ++i) {
        Profile p = dom.profile(i);
        table->entries.emplace(compact_profile(p), cond(p));
    }
    Sds t = table_rule(table);
    for (std::uint64_t i = 0; i < dom.profile_count(); i += 7) {
        Profile p = dom.profile(i);
        CHECK(t(p) == cond(p));
    }
    CHECK_THROWS_AS(t(mk("alts: a b c\n1: {a,b},c\n2: a,b,c\n3: a,b,c\n")), Error);

    SUBCASE("json round trip") {
        auto again = table_from_json(table_to_json(*table));
        CHECK(again->entries.size() == table->entries.size());
        Sds t2 = table_rule(again);
        Profile p = dom.profile(11);
        CHECK(t2(p) == t(p));
    }
}

TEST_CASE("rule identifier parsing") {
    CHECK(parse_rule_id("condorcet").name == "condorcet");
    CHECK(parse_rule_id("score:copeland^2+cw").name == "score:copeland^2+cw");
    CHECK(parse_rule_id("score:plurality").name == "score:plurality^1");
    CHECK(parse_rule_id("param-omni?t1=2&t2=1")(mk(kCycle3)) == Lottery::uniform(3));
    CHECK(parse_rule_id("dict:1").name == "dict:1");
    CHECK(parse_rule_id("bidict:0,2").name == "bidict:0,2");
    CHECK(parse_rule_id("const:{a,c}")(mk(kCycle3)) == lot({Rat(1, 2), Rat(0), Rat(1, 2)}));
    CHECK(parse_rule_id("rsd").domain == DomainKind::Weak);
    CHECK_THROWS_AS(parse_rule_id("nonsense"), Error);
    CHECK_THROWS_AS(parse_rule_id("score:borda"), Error);
}
