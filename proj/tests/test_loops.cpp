#include <algorithm>
#include <random>

#include "doctest.h"
#include "omega/lab.hpp"
#include "omega/loops.hpp"
#include "omega/ops.hpp"
#include "oracles.hpp"

using namespace omega;

namespace {

std::vector<std::pair<Bitset, bool>> entries(const LoopTable& t) {
    std::vector<std::pair<Bitset, bool>> out;
    for (std::size_t i = 0; i < t.entries.size(); ++i) out.emplace_back(t.key(i), t.entries[i].accepting);
    std::sort(out.begin(), out.end());
    return out;
}

/// Longest alternation along inclusion chains, by dynamic programming over
/// the oracle's loop list ordered by size.
int oracle_alternations(const Acceptor& a) {
    auto loops = oracle::semantic_loops(a, !is_state_based(a.acceptance()));
    const bool by_edges = !is_state_based(a.acceptance());
    auto key = [&](const oracle::Loop& l) { return by_edges ? l.transitions : l.states; };
    std::sort(loops.begin(), loops.end(), [&](const auto& x, const auto& y) { return key(x).size() < key(y).size(); });
    std::vector<int> best(loops.size(), 0);
    int top = 0;
    for (std::size_t i = 0; i < loops.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (key(loops[j]) == key(loops[i]) || !key(loops[j]).is_subset_of(key(loops[i]))) continue;
            int step = oracle::loop_verdict(a, loops[j]) != oracle::loop_verdict(a, loops[i]) ? 1 : 0;
            best[i] = std::max(best[i], best[j] + step);
        }
        top = std::max(top, best[i]);
    }
    return top;
}

}  // namespace

TEST_CASE("loopable sets of the three state machine") {
    auto t = loopable_sets(fixture("fig3_M"));
    CHECK_FALSE(t.keyed_by_transitions);
    std::vector<std::pair<Bitset, bool>> expected{
        {Bitset{2}, false}, {Bitset{0, 1}, false}, {Bitset{0, 2}, true}, {Bitset{0, 1, 2}, false}};
    std::sort(expected.begin(), expected.end());
    CHECK(entries(t) == expected);
}

TEST_CASE("loopable sets of the machine whose third state is a sink") {
    auto t = loopable_sets(fixture("fig3_Mprime"));
    std::vector<std::pair<Bitset, bool>> expected{
        {Bitset{0}, true}, {Bitset{1}, true}, {Bitset{0, 1}, false}, {Bitset{2}, false}};
    std::sort(expected.begin(), expected.end());
    CHECK(entries(t) == expected);
    CHECK(t.find(Bitset{0, 1, 2}) == nullptr);
}

TEST_CASE("single accepting state with self-loops") {
    PartialStructure p(Alphabet({"a", "b"}), 1, 0);
    p.set(0, 0, 0);
    p.set(0, 1, 0);
    auto t = loopable_sets(validate(p, Buchi{{0}}));
    REQUIRE(t.entries.size() == 1);
    CHECK(t.entries[0].accepting);
}

TEST_CASE("enumeration matches subset enumeration") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        auto a = oracle::random_acceptor(rng, 2 + i % 5, 2, AcceptanceKind::Buchi);
        auto got = enumerate_state_loops(a.structure());
        auto want = oracle::state_loops(a.structure());
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }
    for (int i = 0; i < 100; ++i) {
        auto a = oracle::random_acceptor(rng, 2 + i % 3, 2, AcceptanceKind::Buchi);
        auto got = enumerate_transition_loops(a.structure());
        std::vector<Bitset> want;
        for (const auto& l : oracle::transition_loops(a.structure())) want.push_back(l.transitions);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }
}

TEST_CASE("capacity is enforced") {
    auto a = fixture("fig5_Dbad");
    try {
        (void)loopable_sets(a, 2);
        FAIL("expected CapacityExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CapacityExceeded);
    }
}

TEST_CASE("weak, db and dc on the named fixtures") {
    auto m3 = fixture("fig3_M");
    CHECK_FALSE(is_weak(m3));
    CHECK_FALSE(is_db(m3));
    CHECK_FALSE(is_dc(m3));
    CHECK(is_db(fixture("fig2_B")));
    CHECK_FALSE(is_dc(fixture("fig3_B")));
    CHECK_FALSE(is_db(fixture("fig3_C")));
    // The co-Büchi C accepts (a+b)*b^ω, which is not weak: {1} accepts, {0,1} rejects.
    CHECK_FALSE(is_weak(fixture("fig2_C")));

    PartialStructure p(Alphabet({"a", "b"}), 2, 0);
    p.set(0, 0, 1);
    p.set(0, 1, 0);
    p.set(1, 0, 0);
    p.set(1, 1, 1);
    CHECK(is_weak(validate(p, CoBuchi{})));
}

TEST_CASE("weak means db and dc, on random acceptors") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 300; ++i) {
        auto a = oracle::random_acceptor(rng, 4, 2, i % 2 == 0 ? AcceptanceKind::Muller : AcceptanceKind::Parity);
        CHECK(is_weak(a) == (is_db(a) && is_dc(a)));
        CHECK(is_weak(a) == (oracle_alternations(a) == 0));
    }
}

TEST_CASE("alternation measure") {
    SUBCASE("two state Muller acceptor") {
        auto m = alternation_measure(fixture("fig2_M"));
        CHECK(m.max_alternations == 1);
        REQUIRE(m.witness_chain.size() == 2);
        CHECK(m.witness_chain[0].states.size() == 1);
        CHECK(m.witness_chain[1].states == Bitset{0, 1});
    }
    SUBCASE("three state machine") {
        auto m = alternation_measure(fixture("fig3_M"));
        CHECK(m.max_alternations == 2);
        REQUIRE(m.witness_chain.size() == 3);
        CHECK(m.witness_chain[0].states == Bitset{2});
        CHECK(m.witness_chain[1].states == Bitset{0, 2});
        CHECK(m.witness_chain[2].states == Bitset{0, 1, 2});
    }
    SUBCASE("Wagner family") {
        for (int n = 0; n <= 3; ++n)
            for (int m = 0; m <= 3; ++m) {
                auto am = alternation_measure(wagner_family(n, m, Polarity::Plus));
                CHECK(am.max_alternations == n);
                CHECK(am.polarity == Polarity::Plus);
                CHECK(alternation_measure(wagner_family(n, m, Polarity::Minus)).polarity == Polarity::Minus);
                CHECK(alternation_measure(wagner_family(n, m, Polarity::Both)).polarity == Polarity::Both);
            }
    }
    SUBCASE("matches chain dynamic programming and survives conversion") {
        std::mt19937_64 rng(47);
        for (int i = 0; i < 200; ++i) {
            auto a = oracle::random_acceptor(rng, 4, 2, i % 2 == 0 ? AcceptanceKind::Buchi : AcceptanceKind::Parity);
            int value = alternation_measure(a).max_alternations;
            CHECK(value == oracle_alternations(a));
            CHECK(alternation_measure(convert(a, AcceptanceKind::Muller)).max_alternations == value);
            CHECK(alternation_measure(convert(a, AcceptanceKind::TMuller)).max_alternations == value);
        }
    }
}

TEST_CASE("weak conversions") {
    SUBCASE("all-accepting Muller") {
        auto s = fixture("fig2_M").structure();
        MullerStates all;
        for (const auto& l : enumerate_state_loops(s)) all.table.push_back(l);
        auto b = weak_to_buchi(validate(s, all));
        CHECK(std::get<Buchi>(b.acceptance()).accepting == Bitset{0, 1});
    }
    SUBCASE("not weak") {
        try {
            (void)weak_to_buchi(fixture("fig2_M"));
            FAIL("expected NotWeak");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotWeak);
        }
    }
    SUBCASE("weak random acceptors keep their language") {
        std::mt19937_64 rng(53);
        int converted = 0;
        for (int i = 0; i < 400 && converted < 40; ++i) {
            auto a = random_dma(4, derive_seed(53, i), 2, 2);
            if (!is_weak(a)) continue;
            ++converted;
            auto b = weak_to_buchi(a);
            auto c = weak_to_cobuchi(a);
            for (int j = 0; j < 500; ++j) {
                auto w = oracle::random_lasso(rng, 2, 4, 6);
                bool v = oracle::accepts(a, w);
                CHECK(oracle::accepts(b, w) == v);
                CHECK(oracle::accepts(c, w) == v);
            }
        }
        CHECK(converted > 0);
    }
}
