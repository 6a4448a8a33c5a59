#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omega/automaton.hpp"
#include "omega/loops.hpp"
#include "omega/ops.hpp"

namespace omega {

/// Language equivalence of two states of one acceptor; the witness is a
/// lasso accepted from exactly one of them.
EquivalenceResult state_equivalent(const Acceptor& a, State p, State q, std::size_t capacity = kDefaultLoopCapacity);

/// Rightcon automaton of the language of an acceptor.
struct Quotient {
    TransitionStructure structure;
    /// Quotient state of each acceptor state; kNoState when unreachable.
    std::vector<State> projection;
    /// Shortest, then least, word reaching each quotient state.
    std::vector<Word> representatives;
    /// One acceptor state per quotient state (the one reached by its
    /// representative).
    std::vector<State> anchors;

    [[nodiscard]] int size() const { return structure.state_count(); }
};

/// Partitions reachable states by language equivalence. Quotient states are
/// numbered in breadth-first order of their representatives.
Quotient rightcon_quotient(const Acceptor& a, std::size_t capacity = kDefaultLoopCapacity);

int index(const Acceptor& a, std::size_t capacity = kDefaultLoopCapacity);
bool is_trivial(const Acceptor& a, std::size_t capacity = kDefaultLoopCapacity);

/// True if every pair of words reaching the same state of `a` also reaches
/// the same state of `b`. Throws AlphabetMismatch.
bool refines(const TransitionStructure& a, const TransitionStructure& b);

/// Nondeterministic structure with total successor sets (possibly empty).
struct NondetStructure {
    Alphabet alphabet;
    int state_count = 0;
    Bitset initial;
    std::vector<Bitset> delta;  // row-major, state * |alphabet| + symbol

    [[nodiscard]] const Bitset& successors(State q, Symbol a) const {
        return delta[static_cast<std::size_t>(q) * static_cast<std::size_t>(alphabet.size()) +
                     static_cast<std::size_t>(a)];
    }
};

struct Determinized {
    TransitionStructure structure;
    std::vector<Bitset> subsets;  // subset named by each state
};

/// Reachable subset construction, states in breadth-first order.
Determinized powerset(const NondetStructure& n);

enum class InformativeClass { IT, IM, IP, IB, IC };

const char* to_string(InformativeClass c);

/// Why a class does not apply: either two lassos with the same quotient
/// infinity fingerprint and different membership, or a violated condition
/// on quotient loops (with one lasso per loop involved).
struct Counterexample {
    std::string reason;
    std::vector<LassoWord> lassos;
    std::vector<Bitset> loops;  // quotient state sets or transition-id sets
};

struct ClassVerdict {
    bool holds = false;
    /// Acceptance on the quotient structure when `holds`.
    std::optional<Acceptance> certificate;
    std::optional<Counterexample> counterexample;
};

struct Classification {
    Quotient quotient;
    int index = 0;
    bool trivial = false;
    bool weak = false;
    bool db = false;
    bool dc = false;
    ClassVerdict it, im, ip, ib, ic;

    [[nodiscard]] const ClassVerdict& verdict(InformativeClass c) const;
};

Classification classify(const Acceptor& a, std::size_t capacity = kDefaultLoopCapacity);
Classification classify(const Acceptor& a, Quotient quotient, std::size_t capacity = kDefaultLoopCapacity);

/// Deterministic finite-word automaton with a total transition function.
struct FiniteAutomaton {
    Alphabet alphabet;
    int state_count = 0;
    State initial = 0;
    std::vector<State> delta;  // row-major
    Bitset accepting;

    [[nodiscard]] State next(State q, Symbol a) const {
        return delta[static_cast<std::size_t>(q) * static_cast<std::size_t>(alphabet.size()) +
                     static_cast<std::size_t>(a)];
    }
    [[nodiscard]] bool accepts(const Word& w) const;
};

/// One term of Σ*(R_1^ω + ... + R_k^ω): the finite words that leave the
/// anchor, stay inside the loop, visit every loop state and return.
struct DecompositionTerm {
    Bitset loop;
    State anchor = 0;
    FiniteAutomaton words;
};

/// Decomposition of a language with trivial right congruence given by a
/// state-Muller acceptor; table entries that are not loopable are dropped.
/// Throws NotMuller, NotTrivial.
std::vector<DecompositionTerm> trivial_decomposition(const Acceptor& a,
                                                     std::size_t capacity = kDefaultLoopCapacity);

/// Membership of a lasso in Σ*(R_1^ω + ... + R_k^ω).
bool decomposition_accepts(const std::vector<DecompositionTerm>& terms, const LassoWord& w);

}  // namespace omega
