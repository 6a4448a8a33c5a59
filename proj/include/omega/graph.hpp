#pragma once

#include <vector>

#include "omega/automaton.hpp"

namespace omega {

/// Strongly connected components of the subgraph induced by `states`.
/// Only components carrying at least one internal edge are returned (a lone
/// state counts only with a self-loop). Components are ordered by their
/// least state id.
std::vector<Bitset> nontrivial_sccs(const TransitionStructure& s, const Bitset& states);

/// Same, for the subgraph formed by an explicit set of transition ids. Each
/// result is the set of edges whose endpoints fall in one component.
std::vector<Bitset> nontrivial_edge_sccs(const TransitionStructure& s, const Bitset& edges);

/// States touched (as source or target) by a set of transition ids.
Bitset states_of_edges(const TransitionStructure& s, const Bitset& edges);

/// Transition ids with both endpoints inside `states`.
Bitset internal_edges(const TransitionStructure& s, const Bitset& states);

/// Shortest word from `from` to any state of `targets` (BFS in symbol
/// order, so ties resolve to the lexicographically least word).
Word shortest_path(const TransitionStructure& s, State from, const Bitset& targets);

/// Closed walk starting and ending at `start` that uses only edges in
/// `edges` and traverses each of them at least once. `edges` must be
/// strongly connected and touch `start`.
Word covering_cycle(const TransitionStructure& s, State start, const Bitset& edges);

/// Closed walk from `start` inside the induced subgraph on `states` that
/// visits every state of the set. The set must be strongly connected.
Word state_covering_cycle(const TransitionStructure& s, State start, const Bitset& states);

}  // namespace omega
