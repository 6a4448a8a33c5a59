#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "omega/automaton.hpp"
#include "omega/congruence.hpp"

namespace omega {

inline constexpr std::size_t kDefaultMonoidCapacity = 200000;

/// Behaviour of a finite word from every state: where it ends and what it
/// passes through, the source included.
struct Profile {
    std::vector<State> target;
    std::vector<Bitset> visited_states;
    std::vector<Bitset> visited_transitions;  // empty unless the condition is transition-based
    Word representative;

    /// Behaviour of this word followed by `next`.
    [[nodiscard]] Profile then(const Profile& next) const;

    friend bool operator==(const Profile& a, const Profile& b) {
        return a.target == b.target && a.visited_states == b.visited_states &&
               a.visited_transitions == b.visited_transitions;
    }
};

/// Profile of one concrete word.
Profile profile_of(const Acceptor& a, const Word& w);

struct ProfileMonoid {
    /// Profiles of all nonempty words in breadth-first order; each element
    /// keeps its shortest, then least, realizing word.
    std::vector<Profile> elements;
    std::vector<std::size_t> generators;  // element index per symbol
    /// Index of an element equal to `p`, if present.
    [[nodiscard]] std::optional<std::size_t> find(const Profile& p) const;
};

/// Throws CapacityExceeded.
ProfileMonoid profile_monoid(const Acceptor& a, std::size_t capacity = kDefaultMonoidCapacity);

/// Acceptance from `from` of rep(s) . rep(t)^ω, decided on the profiles.
bool omega_accept(const Acceptor& a, const Profile& s, const Profile& t, State from);

struct RespectiveResult {
    bool respective = true;
    /// x . u^ω is in the language but [x u^n] never settles.
    std::optional<Word> x, u;
};

/// Throws CapacityExceeded.
RespectiveResult is_respective(const Acceptor& a, std::size_t capacity = kDefaultMonoidCapacity);
RespectiveResult is_respective(const Acceptor& a, const Quotient& q, std::size_t capacity = kDefaultMonoidCapacity);

/// Concrete pumping failure: u v^n w and u v^(n+1) w differ in membership.
struct CountingWitness {
    Word u, v;
    LassoWord w;
    int n = 0;
};

struct NonCountingResult {
    bool non_counting = true;
    std::optional<CountingWitness> witness;
};

/// Decided on the transformation monoid of the rightcon automaton: the
/// language is non-counting iff every word's action settles on every class.
/// Throws CapacityExceeded.
NonCountingResult is_non_counting(const Acceptor& a, std::size_t capacity = kDefaultMonoidCapacity);
NonCountingResult is_non_counting(const Acceptor& a, const Quotient& q, std::size_t capacity = kDefaultMonoidCapacity);

/// Single instance of the respectiveness condition: true unless x . u^ω is
/// accepted and the classes of x u^n never settle. Throws InvalidLasso on
/// an empty u.
bool respective_pair_check(const Acceptor& a, const Word& x, const Word& u);
bool respective_pair_check(const Acceptor& a, const Quotient& q, const Word& x, const Word& u);

}  // namespace omega
