#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "omega/automaton.hpp"

namespace omega {

/// Default bound on enumerated loopable subsets before CapacityExceeded.
inline constexpr std::size_t kDefaultLoopCapacity = std::size_t{1} << 20;

/// A reachable, strongly connected set of states, optionally narrowed to a
/// strongly connected subset of its internal transitions.
struct LoopableSet {
    Bitset states;
    Bitset transitions;  // transition ids; for state-keyed tables all induced edges
    bool accepting = false;
};

/// Every loopable set of a structure with its verdict under one acceptance
/// condition. Transition-Muller conditions key entries by transition sets,
/// every other condition by state sets. Entries are in canonical order of
/// their key.
struct LoopTable {
    bool keyed_by_transitions = false;
    std::vector<LoopableSet> entries;

    [[nodiscard]] const Bitset& key(std::size_t i) const {
        return keyed_by_transitions ? entries[i].transitions : entries[i].states;
    }
    [[nodiscard]] const LoopableSet* find(const Bitset& key) const;
};

/// All reachable strongly connected state sets, canonical order.
/// Vertex-removal decomposition inside each maximal SCC.
std::vector<Bitset> enumerate_state_loops(const TransitionStructure& s,
                                          std::size_t capacity = kDefaultLoopCapacity);

/// All reachable strongly connected transition sets, canonical order.
std::vector<Bitset> enumerate_transition_loops(const TransitionStructure& s,
                                               std::size_t capacity = kDefaultLoopCapacity);

/// Loop table of an acceptor (throws CapacityExceeded).
LoopTable loopable_sets(const Acceptor& a, std::size_t capacity = kDefaultLoopCapacity);

/// Same enumeration, transition-keyed regardless of the acceptance kind.
LoopTable transition_loop_table(const Acceptor& a, std::size_t capacity = kDefaultLoopCapacity);

bool is_weak(const LoopTable& table);
bool is_db(const LoopTable& table);
bool is_dc(const LoopTable& table);

bool is_weak(const Acceptor& a);
bool is_db(const Acceptor& a);
bool is_dc(const Acceptor& a);

enum class Polarity { Plus, Minus, Both };

const char* to_string(Polarity p);
std::optional<Polarity> parse_polarity(std::string_view token);

struct AlternationMeasure {
    int max_alternations = 0;
    Polarity polarity = Polarity::Plus;
    /// Strictly increasing inclusion chain whose consecutive members
    /// alternate in acceptance.
    std::vector<LoopableSet> witness_chain;
};

/// Longest accepting/rejecting alternation along inclusion chains of
/// loopable sets.
///
/// The polarity is that of the first chain in the longest reachable
/// sequence of maximum-length chains with alternating starting verdicts:
/// maximum chains are grouped by the maximal SCC they live in, those groups
/// form a DAG under reachability, and the longest path through groups of
/// alternating sign decides. If longest paths start with both signs the
/// polarity is Both.
AlternationMeasure alternation_measure(const LoopTable& table, const TransitionStructure& s);
AlternationMeasure alternation_measure(const Acceptor& a);

/// Büchi (resp. co-Büchi) acceptor on the same structure. Throws NotWeak.
Acceptor weak_to_buchi(const Acceptor& a);
Acceptor weak_to_cobuchi(const Acceptor& a);

}  // namespace omega
