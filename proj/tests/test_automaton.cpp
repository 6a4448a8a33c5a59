#include <random>

#include "doctest.h"
#include "omega/automaton.hpp"
#include "omega/lab.hpp"
#include "omega/ops.hpp"
#include "oracles.hpp"

using namespace omega;

namespace {

const Alphabet kAb({"a", "b"});

Symbol sym(const Acceptor& a, const char* name) { return a.alphabet().index(name); }

Word word(const Acceptor& a, std::string_view text) {
    Word w;
    for (char c : text) w.push_back(a.alphabet().index(std::string_view(&c, 1)));
    return w;
}

LassoWord lasso(const Acceptor& a, std::string_view spoke, std::string_view cycle) {
    return {word(a, spoke), word(a, cycle)};
}

ErrorKind kind_of_failure(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::ParseError;
}

const AcceptanceKind kKinds[] = {AcceptanceKind::Buchi, AcceptanceKind::CoBuchi, AcceptanceKind::Parity,
                                 AcceptanceKind::Muller, AcceptanceKind::TMuller};

}  // namespace

TEST_CASE("validate accepts the smallest acceptor and rejects broken ones") {
    PartialStructure one(kAb, 1, 0);
    one.set(0, 0, 0);
    one.set(0, 1, 0);
    auto a = validate(one, Buchi{{0}});
    CHECK(a.state_count() == 1);

    PartialStructure holey(kAb, 2, 0);
    holey.set(0, 0, 1);
    holey.set(0, 1, 0);
    holey.set(1, 0, 0);
    CHECK(kind_of_failure([&] { (void)validate(holey, Buchi{}); }) == ErrorKind::IncompleteTransition);

    PartialStructure three(kAb, 3, 0);
    for (State q = 0; q < 3; ++q)
        for (Symbol c = 0; c < 2; ++c) three.set(q, c, (q + 1) % 3);
    CHECK(kind_of_failure([&] { (void)validate(three, Parity{{0, 1, 2, 0, 0, 1}}); }) == ErrorKind::DanglingReference);
    CHECK(kind_of_failure([&] { (void)validate(three, Buchi{{5}}); }) == ErrorKind::DanglingReference);
    CHECK(kind_of_failure([] { Alphabet(std::vector<std::string>{}); }) == ErrorKind::EmptyAlphabet);
    CHECK(kind_of_failure([] { Alphabet({"a", "a"}); }) == ErrorKind::InvalidAlphabet);
}

TEST_CASE("complete_with_sink") {
    SUBCASE("adds exactly one sink") {
        PartialStructure p(Alphabet({"a"}), 1, 0);
        auto s = complete_with_sink(p);
        CHECK(s.state_count() == 2);
        CHECK(s.next(0, 0) == 1);
        CHECK(s.next(1, 0) == 1);
    }
    SUBCASE("complete input is unchanged") {
        PartialStructure p(kAb, 2, 0);
        p.set(0, 0, 1);
        p.set(0, 1, 0);
        p.set(1, 0, 1);
        p.set(1, 1, 0);
        CHECK(complete_with_sink(p) == TransitionStructure(p));
    }
    SUBCASE("P gains a sink as its fifth state") {
        CHECK(fixture("fig6_P").state_count() == 5);
    }
}

TEST_CASE("lasso_run") {
    SUBCASE("single state transition table") {
        auto t = fixture("fig2_T");
        auto run = lasso_run(t.structure(), lasso(t, "", "a"));
        CHECK(run.inf_transitions == Bitset{t.structure().transition_id(0, sym(t, "a"))});
    }
    SUBCASE("three state machine visits every state on 0011") {
        auto m = fixture("fig3_M");
        auto run = lasso_run(m.structure(), LassoWord({}, {0, 0, 1, 1}));
        CHECK(run.inf_states == Bitset{0, 1, 2});
    }
    SUBCASE("rotating the entry point keeps the infinity sets") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 500; ++i) {
            auto a = oracle::random_acceptor(rng, 5, 3, AcceptanceKind::Buchi);
            auto w = oracle::random_lasso(rng, 3, 4, 5);
            Word shifted = w.spoke();
            shifted.insert(shifted.end(), w.cycle().begin(), w.cycle().end());
            auto r1 = lasso_run(a.structure(), w);
            auto r2 = lasso_run(a.structure(), LassoWord(shifted, w.cycle()));
            CHECK(r1.inf_states == r2.inf_states);
            CHECK(r1.inf_transitions == r2.inf_transitions);
        }
    }
    SUBCASE("empty cycle is rejected") {
        CHECK(kind_of_failure([] { LassoWord({0}, {}); }) == ErrorKind::InvalidLasso);
    }
}

TEST_CASE("accepts agrees with fixtures and with the reference simulation") {
    auto b = fixture("fig2_B");
    CHECK(accepts(b, lasso(b, "", "ab")));
    CHECK_FALSE(accepts(b, lasso(b, "", "c")));
    CHECK_FALSE(accepts(fixture("fig3_M"), LassoWord({}, {0, 0, 1, 1})));

    std::mt19937_64 rng(11);
    for (auto kind : kKinds)
        for (int i = 0; i < 120; ++i) {
            auto a = oracle::random_acceptor(rng, 4, 2, kind);
            for (int j = 0; j < 5; ++j) {
                auto w = oracle::random_lasso(rng, 2, 5, 6);
                CHECK(accepts(a, w) == oracle::accepts(a, w));
            }
        }
}

TEST_CASE("product") {
    auto m1 = fixture("fig7_M1");
    auto m2 = fixture("fig7_M2");
    auto p = product(m1.structure(), m2.structure());
    CHECK(p.structure.state_count() == 2);
    for (State q = 0; q < p.structure.state_count(); ++q) CHECK(p.pairs[q].first == p.pairs[q].second);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto a = oracle::random_acceptor(rng, 2, 2, AcceptanceKind::Buchi);
        auto c = oracle::random_acceptor(rng, 3, 2, AcceptanceKind::Buchi);
        auto pr = product(a.structure(), c.structure());
        CHECK(pr.structure.state_count() <= 6);
        for (State q = 0; q < pr.structure.state_count(); ++q)
            for (Symbol x = 0; x < 2; ++x) {
                auto [l, r] = pr.pairs[q];
                CHECK(pr.pairs[pr.structure.next(q, x)] ==
                      std::pair<State, State>{a.structure().next(l, x), c.structure().next(r, x)});
            }
    }
    CHECK(kind_of_failure([] { (void)product(fixture("fig2_B").structure(), fixture("fig2_M").structure()); }) ==
          ErrorKind::AlphabetMismatch);
}

TEST_CASE("complement") {
    SUBCASE("Büchi becomes co-Büchi on the same set") {
        auto pc = complement(fixture("fig6_P"));
        REQUIRE(pc.kind() == AcceptanceKind::CoBuchi);
        CHECK(std::get<CoBuchi>(pc.acceptance()).accepting == Bitset{2, 3});
        CHECK(accepts(pc, lasso(pc, "", "b")));
    }
    SUBCASE("empty Büchi complements to the universal co-Büchi") {
        PartialStructure p(kAb, 1, 0);
        p.set(0, 0, 0);
        p.set(0, 1, 0);
        auto c = complement(validate(p, Buchi{}));
        CHECK(c.kind() == AcceptanceKind::CoBuchi);
        CHECK(accepts(c, LassoWord({}, {0})));
        CHECK(accepts(c, LassoWord({1}, {1, 0})));
    }
    SUBCASE("flips every lasso verdict and is an involution on verdicts") {
        std::mt19937_64 rng(17);
        int cases = 0;
        for (auto kind : kKinds)
            for (int i = 0; i < 100; ++i) {
                auto a = oracle::random_acceptor(rng, 4, 2, kind);
                auto c = complement(a);
                auto cc = complement(c);
                CHECK(c.structure() == a.structure());
                for (int j = 0; j < 4; ++j) {
                    auto w = oracle::random_lasso(rng, 2, 4, 6);
                    bool v = oracle::accepts(a, w);
                    CHECK(oracle::accepts(c, w) == !v);
                    CHECK(oracle::accepts(cc, w) == v);
                    ++cases;
                }
            }
        CHECK(cases >= 500);
    }
}

TEST_CASE("union and intersection follow the Boolean combination of verdicts") {
    std::mt19937_64 rng(23);
    int cases = 0;
    for (int i = 0; i < 150; ++i) {
        auto a = oracle::random_acceptor(rng, 3, 2, kKinds[i % 5]);
        auto b = oracle::random_acceptor(rng, 3, 2, kKinds[(i / 5) % 5]);
        auto u = combine(a, b, BoolOp::Union);
        auto n = combine(a, b, BoolOp::Intersection);
        bool transitions = a.kind() == AcceptanceKind::TMuller || b.kind() == AcceptanceKind::TMuller;
        CHECK(u.kind() == (transitions ? AcceptanceKind::TMuller : AcceptanceKind::Muller));
        for (int j = 0; j < 4; ++j) {
            auto w = oracle::random_lasso(rng, 2, 4, 6);
            bool va = oracle::accepts(a, w), vb = oracle::accepts(b, w);
            CHECK(oracle::accepts(u, w) == (va || vb));
            CHECK(oracle::accepts(n, w) == (va && vb));
            ++cases;
        }
    }
    CHECK(cases >= 500);

    SUBCASE("De Morgan up to language equality") {
        std::mt19937_64 r2(29);
        for (int i = 0; i < 30; ++i) {
            auto a = oracle::random_acceptor(r2, 3, 2, AcceptanceKind::Buchi);
            auto b = oracle::random_acceptor(r2, 3, 2, AcceptanceKind::Parity);
            auto lhs = complement(combine(a, b, BoolOp::Union));
            auto rhs = combine(complement(a), complement(b), BoolOp::Intersection);
            CHECK(equivalent(lhs, rhs).equivalent);
        }
    }
}

TEST_CASE("convert") {
    SUBCASE("Büchi to parity colors accepting states 1") {
        auto p = convert(fixture("fig2_B"), AcceptanceKind::Parity);
        CHECK(std::get<Parity>(p.acceptance()).colors == std::vector<int>{2, 2, 1});
    }
    SUBCASE("parity to Muller lists the accepting loops") {
        auto m = convert(fixture("fig3_P"), AcceptanceKind::Muller);
        CHECK(std::get<MullerStates>(m.acceptance()).table == std::vector<Bitset>{Bitset{0, 2}});
    }
    SUBCASE("unsupported directions") {
        CHECK(kind_of_failure([] { (void)convert(fixture("fig2_M"), AcceptanceKind::Buchi); }) ==
              ErrorKind::UnsupportedConversion);
        CHECK(kind_of_failure([] { (void)convert(fixture("fig2_T"), AcceptanceKind::Muller); }) ==
              ErrorKind::UnsupportedConversion);
    }
    SUBCASE("every supported conversion preserves every sampled verdict") {
        std::mt19937_64 rng(31);
        int cases = 0;
        const std::pair<AcceptanceKind, AcceptanceKind> paths[] = {
            {AcceptanceKind::Buchi, AcceptanceKind::Parity},   {AcceptanceKind::CoBuchi, AcceptanceKind::Parity},
            {AcceptanceKind::Buchi, AcceptanceKind::Muller},   {AcceptanceKind::Parity, AcceptanceKind::Muller},
            {AcceptanceKind::Parity, AcceptanceKind::TMuller}, {AcceptanceKind::Muller, AcceptanceKind::TMuller},
        };
        for (auto [from, to] : paths)
            for (int i = 0; i < 30; ++i) {
                auto a = oracle::random_acceptor(rng, 4, 2, from);
                auto c = convert(a, to);
                CHECK(c.kind() == to);
                CHECK(c.structure() == a.structure());
                for (int j = 0; j < 4; ++j) {
                    auto w = oracle::random_lasso(rng, 2, 4, 6);
                    CHECK(oracle::accepts(c, w) == oracle::accepts(a, w));
                    ++cases;
                }
            }
        CHECK(cases >= 500);
    }
}

TEST_CASE("equivalent") {
    auto m = fixture("fig2_M");
    CHECK(equivalent(m, m).equivalent);
    CHECK(equivalent(fixture("fig2_C"), m).equivalent);
    CHECK(equivalent(fixture("fig3_M"), fixture("fig3_P")).equivalent);

    auto mc = complement(m);
    auto r = equivalent(m, mc);
    REQUIRE_FALSE(r.equivalent);
    REQUIRE(r.witness);
    CHECK(oracle::accepts(m, *r.witness) != oracle::accepts(mc, *r.witness));

    SUBCASE("decisions agree with an exhaustive short-lasso battery") {
        std::mt19937_64 rng(37);
        auto battery = oracle::lassos(2, 3, 4);
        for (int i = 0; i < 120; ++i) {
            auto a = oracle::random_acceptor(rng, 3, 2, kKinds[i % 5]);
            auto b = oracle::random_acceptor(rng, 3, 2, kKinds[(i / 5) % 5]);
            auto res = equivalent(a, b);
            if (res.equivalent) {
                for (const auto& w : battery) CHECK(oracle::accepts(a, w) == oracle::accepts(b, w));
            } else {
                REQUIRE(res.witness);
                CHECK(oracle::accepts(a, *res.witness) != oracle::accepts(b, *res.witness));
            }
        }
    }
}
