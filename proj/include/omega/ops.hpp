#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "omega/automaton.hpp"
#include "omega/loops.hpp"

namespace omega {

/// Reachable synchronous product; pairs[p] names the component states of
/// product state p. States are numbered in BFS order (symbol order).
struct Product {
    TransitionStructure structure;
    std::vector<std::pair<State, State>> pairs;
};

/// Throws AlphabetMismatch.
Product product(const TransitionStructure& a, const TransitionStructure& b);

/// Same structure, dual condition: Büchi <-> co-Büchi on the same set,
/// parity colors shifted by one, Muller tables replaced by the loopable sets
/// they do not contain.
Acceptor complement(const Acceptor& a, std::size_t capacity = kDefaultLoopCapacity);

enum class BoolOp { Union, Intersection };

/// Muller acceptor on the product whose verdict on each loopable product set
/// is the Boolean combination of the operands' verdicts on its projections.
/// The result is transition-Muller when either operand is, state-Muller
/// otherwise. Throws AlphabetMismatch, CapacityExceeded.
Acceptor combine(const Acceptor& a, const Acceptor& b, BoolOp op, std::size_t capacity = kDefaultLoopCapacity);

/// Structure-preserving conversion along buchi|cobuchi -> parity -> muller
/// -> tmuller. Throws UnsupportedConversion.
Acceptor convert(const Acceptor& a, AcceptanceKind target, std::size_t capacity = kDefaultLoopCapacity);

struct EquivalenceResult {
    bool equivalent = true;
    /// Lasso accepted by exactly one side when not equivalent.
    std::optional<LassoWord> witness;
};

/// Language equality, decided on the product: searches for a strongly
/// connected product edge set whose two projections disagree. Throws
/// AlphabetMismatch, CapacityExceeded.
EquivalenceResult equivalent(const Acceptor& a, const Acceptor& b, std::size_t capacity = kDefaultLoopCapacity);

}  // namespace omega
