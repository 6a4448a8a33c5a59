#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "omega/bitset.hpp"
#include "omega/error.hpp"

namespace omega {

using State = int;
using Symbol = int;
using Word = std::vector<Symbol>;

inline constexpr State kNoState = -1;

/// Ordered, duplicate-free list of symbol tokens. Symbol indices are the
/// positions in this list and define the canonical symbol order.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    [[nodiscard]] int size() const { return static_cast<int>(symbols_.size()); }
    [[nodiscard]] const std::string& name(Symbol a) const { return symbols_.at(a); }
    [[nodiscard]] const std::vector<std::string>& symbols() const { return symbols_; }
    [[nodiscard]] std::optional<Symbol> find(std::string_view token) const;
    /// Throws UnknownSymbol.
    [[nodiscard]] Symbol index(std::string_view token) const;
    /// True when every token is a single character, so words print without
    /// separators.
    [[nodiscard]] bool single_char() const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> symbols_;
};

struct Transition {
    State from = 0;
    Symbol symbol = 0;
    State to = 0;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Transition structure whose delta may have holes (kNoState). Input to
/// validate() and complete_with_sink().
struct PartialStructure {
    Alphabet alphabet;
    int state_count = 0;
    State initial = 0;
    std::vector<State> delta;  // row-major: delta[q * |alphabet| + a]

    PartialStructure() = default;
    PartialStructure(Alphabet alpha, int states, State init);

    void set(State q, Symbol a, State target) { delta.at(index(q, a)) = target; }
    [[nodiscard]] State get(State q, Symbol a) const { return delta.at(index(q, a)); }

private:
    [[nodiscard]] std::size_t index(State q, Symbol a) const {
        return static_cast<std::size_t>(q) * static_cast<std::size_t>(alphabet.size()) +
               static_cast<std::size_t>(a);
    }
};

/// Deterministic, complete transition structure over states 0..n-1.
///
/// Transitions are identified by the dense id `q * |alphabet| + a`; the
/// target is implied by determinism.
class TransitionStructure {
public:
    TransitionStructure() = default;
    /// Throws EmptyAlphabet, IncompleteTransition, DanglingReference.
    explicit TransitionStructure(const PartialStructure& partial);

    [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
    [[nodiscard]] int state_count() const { return state_count_; }
    [[nodiscard]] int symbol_count() const { return alphabet_.size(); }
    [[nodiscard]] int transition_count() const { return state_count_ * alphabet_.size(); }
    [[nodiscard]] State initial() const { return initial_; }

    [[nodiscard]] State next(State q, Symbol a) const {
        return delta_[static_cast<std::size_t>(q) * static_cast<std::size_t>(alphabet_.size()) +
                      static_cast<std::size_t>(a)];
    }
    [[nodiscard]] State run(State q, const Word& w) const {
        for (Symbol a : w) q = next(q, a);
        return q;
    }

    [[nodiscard]] int transition_id(State q, Symbol a) const { return q * alphabet_.size() + a; }
    [[nodiscard]] Transition transition(int id) const {
        State q = id / alphabet_.size();
        Symbol a = id % alphabet_.size();
        return {q, a, next(q, a)};
    }

    /// Same structure with a different initial state.
    [[nodiscard]] TransitionStructure rerooted(State q) const;

    /// States reachable from the initial state.
    [[nodiscard]] Bitset reachable() const;

    [[nodiscard]] const std::vector<State>& delta() const { return delta_; }

    friend bool operator==(const TransitionStructure&, const TransitionStructure&) = default;

private:
    Alphabet alphabet_;
    int state_count_ = 0;
    State initial_ = 0;
    std::vector<State> delta_;
};

enum class AcceptanceKind { Buchi, CoBuchi, Parity, Muller, TMuller };

const char* to_string(AcceptanceKind kind);
std::optional<AcceptanceKind> parse_acceptance_kind(std::string_view token);

struct Buchi {
    Bitset accepting;
    friend bool operator==(const Buchi&, const Buchi&) = default;
};
struct CoBuchi {
    Bitset accepting;  // states that may be visited only finitely often
    friend bool operator==(const CoBuchi&, const CoBuchi&) = default;
};
struct Parity {
    std::vector<int> colors;  // one per state; min color seen infinitely often odd = accept
    friend bool operator==(const Parity&, const Parity&) = default;
};
struct MullerStates {
    std::vector<Bitset> table;  // sorted canonically by validate()
    friend bool operator==(const MullerStates&, const MullerStates&) = default;
};
struct MullerTransitions {
    std::vector<Bitset> table;  // sets of transition ids; sorted canonically
    friend bool operator==(const MullerTransitions&, const MullerTransitions&) = default;
};

using Acceptance = std::variant<Buchi, CoBuchi, Parity, MullerStates, MullerTransitions>;

AcceptanceKind kind_of(const Acceptance& acc);

/// True when the verdict depends only on the set of states visited
/// infinitely often.
inline bool is_state_based(const Acceptance& acc) {
    return !std::holds_alternative<MullerTransitions>(acc);
}

/// Applies an acceptance condition to infinity sets.
bool is_accepting(const Acceptance& acc, const Bitset& inf_states, const Bitset& inf_transitions);

/// A deterministic complete structure with a consistent acceptance
/// condition. Only validate() builds one.
class Acceptor {
public:
    [[nodiscard]] const TransitionStructure& structure() const { return structure_; }
    [[nodiscard]] const Acceptance& acceptance() const { return acceptance_; }
    [[nodiscard]] AcceptanceKind kind() const { return kind_of(acceptance_); }
    [[nodiscard]] int state_count() const { return structure_.state_count(); }
    [[nodiscard]] const Alphabet& alphabet() const { return structure_.alphabet(); }

    /// Re-rooted copy (A_q).
    [[nodiscard]] Acceptor rerooted(State q) const;

    friend bool operator==(const Acceptor&, const Acceptor&) = default;

private:
    friend Acceptor validate(const TransitionStructure& structure, Acceptance acceptance);
    Acceptor(TransitionStructure s, Acceptance a) : structure_(std::move(s)), acceptance_(std::move(a)) {}

    TransitionStructure structure_;
    Acceptance acceptance_;
};

/// Checks completeness and every acceptance reference, canonicalizes Muller
/// tables. Throws IncompleteTransition, DanglingReference, EmptyAlphabet,
/// InvalidAcceptance.
Acceptor validate(const PartialStructure& structure, Acceptance acceptance);
Acceptor validate(const TransitionStructure& structure, Acceptance acceptance);

/// Fills every missing transition with one fresh sink state that loops on
/// all symbols. A complete input is returned unchanged.
TransitionStructure complete_with_sink(const PartialStructure& partial);

/// Ultimately periodic word spoke . cycle^omega. The cycle is never empty.
class LassoWord {
public:
    /// Throws InvalidLasso on an empty cycle.
    LassoWord(Word spoke, Word cycle);

    [[nodiscard]] const Word& spoke() const { return spoke_; }
    [[nodiscard]] const Word& cycle() const { return cycle_; }

    friend bool operator==(const LassoWord&, const LassoWord&) = default;

private:
    Word spoke_;
    Word cycle_;
};

struct RunAnalysis {
    Bitset inf_states;
    Bitset inf_transitions;  // transition ids
    int entry_index = 0;     // cycle repetitions before the boundary state repeats
};

/// Simulates the spoke, then repeats the cycle until the state at a cycle
/// boundary repeats. Throws UnknownSymbol.
RunAnalysis lasso_run(const TransitionStructure& structure, const LassoWord& w);
RunAnalysis lasso_run(const TransitionStructure& structure, State from, const LassoWord& w);

bool accepts(const Acceptor& acceptor, const LassoWord& w);
bool accepts_from(const Acceptor& acceptor, State from, const LassoWord& w);

/// Renders a word with the alphabet's tokens ('.'-separated when some token
/// is longer than one character).
std::string format_word(const Alphabet& alphabet, const Word& w);
std::string format_lasso(const Alphabet& alphabet, const LassoWord& w);

}  // namespace omega
