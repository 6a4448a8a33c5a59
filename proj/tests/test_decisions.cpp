#include <random>

#include "doctest.h"
#include "omega/decisions.hpp"
#include "omega/lab.hpp"
#include "omega/ops.hpp"
#include "oracles.hpp"

using namespace omega;

namespace {

Word word(const Alphabet& alpha, std::string_view text) {
    Word w;
    for (char c : text) w.push_back(alpha.index(std::string_view(&c, 1)));
    return w;
}

Word power(const Word& w, int n) {
    Word out;
    for (int i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
}

Word concat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// Respectiveness over all x with |x| <= 3 and u with 1 <= |u| <= 4: an
/// accepted x.u^ω must see the class of x u^n reach a fixed point.
bool bounded_respective(const Acceptor& a, const Quotient& q) {
    const auto& s = a.structure();
    const int k = a.alphabet().size();
    for (const auto& x : oracle::words(k, 0, 3))
        for (const auto& u : oracle::words(k, 1, 4)) {
            if (!oracle::accepts(a, LassoWord(x, u))) continue;
            State p = s.run(s.initial(), x);
            bool settled = false;
            for (int i = 0; i <= q.size() + 1 && !settled; ++i) {
                State next = s.run(p, u);
                settled = q.projection[next] == q.projection[p];
                p = next;
            }
            if (!settled) return false;
        }
    return true;
}

void check_counting_witness(const Acceptor& a, const CountingWitness& w) {
    auto with = [&](int n) {
        return LassoWord(concat(concat(w.u, power(w.v, n)), w.w.spoke()), w.w.cycle());
    };
    CHECK(oracle::accepts(a, with(w.n)) != oracle::accepts(a, with(w.n + 1)));
}

}  // namespace

TEST_CASE("profile monoid") {
    SUBCASE("one state over one letter") {
        PartialStructure p(Alphabet({"a"}), 1, 0);
        p.set(0, 0, 0);
        CHECK(profile_monoid(validate(p, Buchi{{0}})).elements.size() == 1);
    }
    SUBCASE("a swaps two states") {
        PartialStructure p(Alphabet({"a"}), 2, 0);
        p.set(0, 0, 1);
        p.set(1, 0, 0);
        auto a = validate(p, Buchi{{0}});
        CHECK_FALSE(profile_of(a, {0}) == profile_of(a, {0, 0}));
        CHECK(profile_monoid(a).elements.size() == 2);
    }
    SUBCASE("the word 1012 swaps the initial state and state 2") {
        auto b = fixture("fig5_Bbad");
        auto pr = profile_of(b, word(b.alphabet(), "1012"));
        CHECK(pr.target[0] == 3);
        CHECK(pr.target[3] == 0);
    }
    SUBCASE("closed under composition and covers every short word") {
        auto a = fixture("fig6_P");
        auto m = profile_monoid(a);
        for (const auto& w : oracle::words(3, 1, 5)) CHECK(m.find(profile_of(a, w)).has_value());
        for (std::size_t i = 0; i < m.elements.size(); i += 7)
            for (std::size_t j = 0; j < m.elements.size(); j += 5)
                CHECK(m.find(m.elements[i].then(m.elements[j])).has_value());
        for (const auto& e : m.elements) CHECK(profile_of(a, e.representative) == e);
    }
    SUBCASE("capacity") {
        try {
            (void)profile_monoid(fixture("fig5_Dbad"), 3);
            FAIL("expected CapacityExceeded");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::CapacityExceeded);
        }
    }
}

TEST_CASE("omega_accept decides lassos from profiles") {
    auto p = fixture("fig6_P");
    auto id = profile_of(p, {});
    CHECK_FALSE(omega_accept(p, id, profile_of(p, word(p.alphabet(), "b")), 0));
    auto b = fixture("fig5_Bbad");
    CHECK(omega_accept(b, profile_of(b, {}), profile_of(b, word(b.alphabet(), "1012")), 0));

    std::mt19937_64 rng(71);
    for (int i = 0; i < 500; ++i) {
        auto a = oracle::random_acceptor(rng, 4, 2, static_cast<AcceptanceKind>(i % 5));
        auto w = oracle::random_lasso(rng, 2, 4, 5);
        State from = static_cast<State>(i % 4);
        CHECK(omega_accept(a, profile_of(a, w.spoke()), profile_of(a, w.cycle()), from) ==
              oracle::accepts(a, w, from));
    }
}

TEST_CASE("respectiveness of the named fixtures") {
    SUBCASE("Büchi acceptor pumping 1012") {
        auto b = fixture("fig5_Bbad");
        auto r = is_respective(b);
        CHECK_FALSE(r.respective);
        REQUIRE(r.x);
        REQUIRE(r.u);
        CHECK_FALSE(respective_pair_check(b, *r.x, *r.u));
        CHECK_FALSE(respective_pair_check(b, {}, word(b.alphabet(), "1012")));
        CHECK(respective_pair_check(b, {}, word(b.alphabet(), "10121012")));
        CHECK(respective_pair_check(b, {}, word(b.alphabet(), "0")));
    }
    SUBCASE("co-Büchi and the Büchi acceptor in both weak classes") {
        CHECK_FALSE(is_respective(fixture("fig5_Cbad")).respective);
        auto d = fixture("fig5_Dbad");
        auto c = classify(d);
        CHECK(c.ib.holds);
        CHECK(c.ic.holds);
        auto r = is_respective(d, c.quotient);
        CHECK_FALSE(r.respective);
        CHECK_FALSE(respective_pair_check(d, c.quotient, *r.x, *r.u));
    }
    SUBCASE("P and its complement") {
        auto p = fixture("fig6_P");
        CHECK(is_respective(p).respective);
        auto pc = complement(p);
        auto r = is_respective(pc);
        CHECK_FALSE(r.respective);
        CHECK(*r.u == word(pc.alphabet(), "b"));
        CHECK_FALSE(respective_pair_check(pc, *r.x, *r.u));
    }
    SUBCASE("rejected lassos are vacuously fine") {
        auto b = fixture("fig2_B");
        CHECK(respective_pair_check(b, {}, word(b.alphabet(), "c")));
    }
    SUBCASE("Wagner family") {
        for (int n = 0; n <= 3; ++n)
            for (int m = 0; m <= 3; ++m) CHECK(is_respective(wagner_family(n, m, Polarity::Plus)).respective);
    }
}

TEST_CASE("respectiveness equals bounded brute force on every fixture") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        auto a = fixture(name);
        auto q = rightcon_quotient(a);
        auto r = is_respective(a, q);
        CHECK(r.respective == bounded_respective(a, q));
        if (!r.respective) CHECK_FALSE(respective_pair_check(a, q, *r.x, *r.u));
    }
}

TEST_CASE("non-counting") {
    SUBCASE("(aa)*b^ω counts") {
        auto a = fixture("aab");
        auto r = is_non_counting(a);
        CHECK_FALSE(r.non_counting);
        REQUIRE(r.witness);
        CHECK(r.witness->v == word(a.alphabet(), "a"));
        check_counting_witness(a, *r.witness);
        CHECK(is_respective(a).respective);
    }
    SUBCASE("Σ*(a+Σa)^ω does not") { CHECK(is_non_counting(fixture("fgaxa")).non_counting); }
    SUBCASE("a^ω over one letter") {
        PartialStructure p(Alphabet({"a"}), 1, 0);
        p.set(0, 0, 0);
        CHECK(is_non_counting(validate(p, Buchi{{0}})).non_counting);
    }
    SUBCASE("witnesses are genuine and non-counting implies respective") {
        int violations = 0, counted = 0;
        for (int i = 0; i < 50; ++i) {
            auto a = random_dma(4, derive_seed(73, i));
            auto q = rightcon_quotient(a);
            auto nc = is_non_counting(a, q);
            if (!nc.non_counting) {
                ++counted;
                REQUIRE(nc.witness);
                check_counting_witness(a, *nc.witness);
            } else if (!is_respective(a, q).respective) {
                ++violations;
            }
        }
        CHECK(violations == 0);
        MESSAGE("counting acceptors among 50: " << counted);
    }
    SUBCASE("implication on a wider sweep of small acceptors") {
        std::mt19937_64 rng(79);
        int non_counting = 0;
        for (int i = 0; i < 500; ++i) {
            auto a = oracle::random_acceptor(rng, 2 + i % 3, 2, static_cast<AcceptanceKind>(i % 5));
            auto q = rightcon_quotient(a);
            auto nc = is_non_counting(a, q);
            if (!nc.non_counting) {
                check_counting_witness(a, *nc.witness);
                continue;
            }
            ++non_counting;
            CHECK(is_respective(a, q).respective);
        }
        CHECK(non_counting > 50);
    }
}
