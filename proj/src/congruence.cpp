#include "omega/congruence.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

#include "omega/graph.hpp"

namespace omega {

EquivalenceResult state_equivalent(const Acceptor& a, State p, State q, std::size_t capacity) {
    if (p == q) return {};
    return equivalent(a.rerooted(p), a.rerooted(q), capacity);
}

namespace {

/// Reachable states in breadth-first order with their access words.
struct Exploration {
    std::vector<State> order;
    std::vector<Word> words;  // indexed by state; only reachable entries set
};

Exploration explore(const TransitionStructure& s) {
    Exploration out;
    out.words.resize(static_cast<std::size_t>(s.state_count()));
    std::vector<char> seen(static_cast<std::size_t>(s.state_count()), 0);
    std::deque<State> queue{s.initial()};
    seen[s.initial()] = 1;
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        out.order.push_back(q);
        for (Symbol a = 0; a < s.symbol_count(); ++a) {
            State t = s.next(q, a);
            if (seen[t] != 0) continue;
            seen[t] = 1;
            out.words[t] = out.words[q];
            out.words[t].push_back(a);
            queue.push_back(t);
        }
    }
    return out;
}

/// Short lassos used to separate obviously inequivalent states before the
/// exact check.
std::vector<LassoWord> screening_battery(int k) {
    std::vector<Word> spokes{{}};
    for (Symbol a = 0; a < k; ++a) spokes.push_back({a});
    std::vector<Word> cycles;
    for (int len = 1; len <= 3 && cycles.size() < 64; ++len) {
        Word w(static_cast<std::size_t>(len), 0);
        while (true) {
            cycles.push_back(w);
            int i = len - 1;
            while (i >= 0 && w[i] == k - 1) w[i--] = 0;
            if (i < 0) break;
            ++w[i];
        }
    }
    std::vector<LassoWord> out;
    for (const auto& u : spokes)
        for (const auto& v : cycles) out.emplace_back(u, v);
    return out;
}

}  // namespace

Quotient rightcon_quotient(const Acceptor& a, std::size_t capacity) {
    const auto& s = a.structure();
    const int n = s.state_count();
    const int k = s.symbol_count();
    Exploration ex = explore(s);

    // Screening partition: battery signatures, refined Moore-style.
    std::vector<int> block(static_cast<std::size_t>(n), -1);
    {
        auto battery = screening_battery(k);
        std::map<std::vector<bool>, int> ids;
        for (State q : ex.order) {
            std::vector<bool> sig;
            sig.reserve(battery.size());
            for (const auto& w : battery) sig.push_back(accepts_from(a, q, w));
            block[q] = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
        }
        std::size_t count = ids.size();
        while (true) {
            std::map<std::vector<int>, int> refined;
            std::vector<int> next(static_cast<std::size_t>(n), -1);
            for (State q : ex.order) {
                std::vector<int> key{block[q]};
                for (Symbol c = 0; c < k; ++c) key.push_back(block[s.next(q, c)]);
                next[q] = refined.emplace(std::move(key), static_cast<int>(refined.size())).first->second;
            }
            block = std::move(next);
            if (refined.size() == count) break;
            count = refined.size();
        }
    }

    // Exact split of each screening block against class anchors.
    std::vector<int> cls(static_cast<std::size_t>(n), -1);
    std::vector<State> anchors;
    std::map<int, std::vector<int>> classes_in_block;
    for (State q : ex.order) {
        auto& candidates = classes_in_block[block[q]];
        for (int c : candidates)
            if (state_equivalent(a, anchors[c], q, capacity).equivalent) {
                cls[q] = c;
                break;
            }
        if (cls[q] < 0) {
            cls[q] = static_cast<int>(anchors.size());
            anchors.push_back(q);
            candidates.push_back(cls[q]);
        }
    }

    // Classes are already numbered in breadth-first order of first discovery.
    const int m = static_cast<int>(anchors.size());
    PartialStructure partial(s.alphabet(), m, 0);
    for (int c = 0; c < m; ++c)
        for (Symbol x = 0; x < k; ++x) partial.set(c, x, cls[s.next(anchors[c], x)]);

    Quotient out;
    out.structure = TransitionStructure(partial);
    out.projection.assign(static_cast<std::size_t>(n), kNoState);
    for (State q : ex.order) out.projection[q] = cls[q];
    out.anchors = anchors;
    for (State q : anchors) out.representatives.push_back(ex.words[q]);
    return out;
}

int index(const Acceptor& a, std::size_t capacity) { return rightcon_quotient(a, capacity).size(); }

bool is_trivial(const Acceptor& a, std::size_t capacity) { return index(a, capacity) == 1; }

bool refines(const TransitionStructure& a, const TransitionStructure& b) {
    Product p = product(a, b);
    std::vector<State> image(static_cast<std::size_t>(a.state_count()), kNoState);
    for (auto [qa, qb] : p.pairs) {
        if (image[qa] == kNoState) image[qa] = qb;
        else if (image[qa] != qb) return false;
    }
    return true;
}

Determinized powerset(const NondetStructure& nd) {
    const int k = nd.alphabet.size();
    std::map<Bitset, State> ids;
    std::vector<Bitset> subsets;
    std::vector<State> delta;
    std::deque<State> queue;
    auto intern = [&](const Bitset& set) {
        auto [it, fresh] = ids.emplace(set, static_cast<State>(subsets.size()));
        if (fresh) {
            subsets.push_back(set);
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern(nd.initial);
    while (!queue.empty()) {
        State cur = queue.front();
        queue.pop_front();
        for (Symbol a = 0; a < k; ++a) {
            Bitset next;
            for (int q : subsets[cur].members()) next |= nd.successors(q, a);
            State t = intern(next);
            delta.resize(subsets.size() * static_cast<std::size_t>(k), kNoState);
            delta[static_cast<std::size_t>(cur) * k + a] = t;
        }
    }
    PartialStructure partial(nd.alphabet, static_cast<int>(subsets.size()), 0);
    delta.resize(subsets.size() * static_cast<std::size_t>(k), kNoState);
    partial.delta = std::move(delta);
    return {TransitionStructure(partial), std::move(subsets)};
}

const char* to_string(InformativeClass c) {
    switch (c) {
        case InformativeClass::IT: return "IT";
        case InformativeClass::IM: return "IM";
        case InformativeClass::IP: return "IP";
        case InformativeClass::IB: return "IB";
        case InformativeClass::IC: return "IC";
    }
    return "?";
}

const ClassVerdict& Classification::verdict(InformativeClass c) const {
    switch (c) {
        case InformativeClass::IT: return it;
        case InformativeClass::IM: return im;
        case InformativeClass::IP: return ip;
        case InformativeClass::IB: return ib;
        case InformativeClass::IC: return ic;
    }
    throw std::logic_error("unknown informative class");
}

namespace {

LassoWord lasso_for_edges(const TransitionStructure& s, const Bitset& edges) {
    Word spoke = shortest_path(s, s.initial(), states_of_edges(s, edges));
    State entry = s.run(s.initial(), spoke);
    return {spoke, covering_cycle(s, entry, edges)};
}

LassoWord lasso_for_states(const TransitionStructure& s, const Bitset& states) {
    Word spoke = shortest_path(s, s.initial(), states);
    State entry = s.run(s.initial(), spoke);
    return {spoke, state_covering_cycle(s, entry, states)};
}

/// Acceptor loops grouped by their image in the quotient.
struct Fingerprint {
    struct Slot {
        std::optional<LassoWord> accepted, rejected;
    };
    std::map<Bitset, Slot> slots;
    std::optional<Bitset> conflict;

    void add(const Bitset& image, bool accepting, const std::function<LassoWord()>& lasso) {
        auto& slot = slots[image];
        auto& mine = accepting ? slot.accepted : slot.rejected;
        if (!mine) mine = lasso();
        if (!conflict && slot.accepted && slot.rejected) conflict = image;
    }

    [[nodiscard]] bool accepting(const Bitset& image) const { return slots.at(image).accepted.has_value(); }
};

ClassVerdict conflict_verdict(const Fingerprint& f, const char* what) {
    ClassVerdict v;
    const auto& slot = f.slots.at(*f.conflict);
    v.counterexample = Counterexample{std::string("two runs with the same quotient infinity ") + what +
                                          " set differ in acceptance",
                                      {*slot.accepted, *slot.rejected},
                                      {*f.conflict}};
    return v;
}

struct QuotientLoops {
    std::vector<Bitset> sets;
    std::vector<char> accepting;

    [[nodiscard]] bool verdict_of(const Bitset& s) const {
        auto it = std::lower_bound(sets.begin(), sets.end(), s);
        return accepting[static_cast<std::size_t>(it - sets.begin())] != 0;
    }
};

/// Parity coloring by peeling: inside a loop of verdict v the states lying
/// in no sub-loop of the opposite verdict take the lowest color of parity v;
/// the rest is decomposed again. Fails on a loop with no such state.
ClassVerdict parity_verdict(const TransitionStructure& q, const QuotientLoops& loops) {
    std::vector<int> colors(static_cast<std::size_t>(q.state_count()), 0);
    std::optional<Bitset> stuck;
    std::function<void(const Bitset&, int)> peel = [&](const Bitset& scc, int base) {
        if (stuck) return;
        const bool v = loops.verdict_of(scc);
        Bitset free = scc;
        for (std::size_t i = 0; i < loops.sets.size(); ++i)
            if ((loops.accepting[i] != 0) != v && loops.sets[i].is_subset_of(scc)) free -= loops.sets[i];
        if (free.empty()) {
            stuck = scc;
            return;
        }
        const int color = (base % 2 == 1) == v ? base : base + 1;
        for (int s : free.members()) colors[s] = color;
        for (const auto& sub : nontrivial_sccs(q, scc - free)) peel(sub, color + 1);
    };
    for (const auto& top : nontrivial_sccs(q, q.reachable())) peel(top, 0);
    ClassVerdict out;
    if (stuck) {
        out.counterexample = Counterexample{"every state of the loop lies in a sub-loop of opposite acceptance",
                                            {lasso_for_states(q, *stuck)},
                                            {*stuck}};
        return out;
    }
    out.holds = true;
    out.certificate = Parity{std::move(colors)};
    return out;
}

/// Büchi (accepting = true) or co-Büchi condition embedded in the quotient.
ClassVerdict embedded_verdict(const TransitionStructure& q, const QuotientLoops& loops, bool accepting) {
    // Core: states all of whose loops have the given verdict.
    Bitset core = q.reachable();
    for (std::size_t i = 0; i < loops.sets.size(); ++i)
        if ((loops.accepting[i] != 0) != accepting) core -= loops.sets[i];
    ClassVerdict out;
    for (std::size_t i = 0; i < loops.sets.size(); ++i) {
        if ((loops.accepting[i] != 0) != accepting || loops.sets[i].intersects(core)) continue;
        out.counterexample = Counterexample{
            std::string(accepting ? "accepting" : "rejecting") + " loop avoids every state whose loops all " +
                (accepting ? "accept" : "reject"),
            {lasso_for_states(q, loops.sets[i])},
            {loops.sets[i]}};
        return out;
    }
    out.holds = true;
    if (accepting) out.certificate = Buchi{core};
    else out.certificate = CoBuchi{core};
    return out;
}

}  // namespace

Classification classify(const Acceptor& a, std::size_t capacity) {
    return classify(a, rightcon_quotient(a, capacity), capacity);
}

Classification classify(const Acceptor& a, Quotient quotient, std::size_t capacity) {
    const auto& s = a.structure();
    const auto& qs = quotient.structure;
    Classification out;
    out.index = quotient.size();
    out.trivial = out.index == 1;
    {
        auto table = loopable_sets(a, capacity);
        out.db = is_db(table);
        out.dc = is_dc(table);
        out.weak = out.db && out.dc;
    }

    auto project_states = [&](const Bitset& states) {
        Bitset image;
        for (int q : states.members()) image.insert(quotient.projection[q]);
        return image;
    };
    auto project_edges = [&](const Bitset& edges) {
        Bitset image;
        for (int id : edges.members()) {
            auto t = s.transition(id);
            image.insert(qs.transition_id(quotient.projection[t.from], t.symbol));
        }
        return image;
    };

    Fingerprint by_transitions, by_states;
    for (const auto& e : enumerate_transition_loops(s, capacity)) {
        Bitset states = states_of_edges(s, e);
        bool acc = is_accepting(a.acceptance(), states, e);
        auto lasso = [&] { return lasso_for_edges(s, e); };
        by_transitions.add(project_edges(e), acc, lasso);
        if (!is_state_based(a.acceptance())) by_states.add(project_states(states), acc, lasso);
    }
    if (is_state_based(a.acceptance()))
        for (const auto& states : enumerate_state_loops(s, capacity)) {
            bool acc = is_accepting(a.acceptance(), states, internal_edges(s, states));
            by_states.add(project_states(states), acc, [&] { return lasso_for_states(s, states); });
        }

    auto accepted_keys = [](const Fingerprint& f) {
        std::vector<Bitset> keys;
        for (const auto& [image, slot] : f.slots)
            if (slot.accepted) keys.push_back(image);
        return keys;
    };

    if (by_transitions.conflict) out.it = conflict_verdict(by_transitions, "transition");
    else out.it = {true, MullerTransitions{accepted_keys(by_transitions)}, std::nullopt};

    auto blocked = [](const ClassVerdict& by) {
        ClassVerdict v;
        v.counterexample = by.counterexample;
        return v;
    };
    if (by_states.conflict) {
        out.im = conflict_verdict(by_states, "state");
        out.ip = out.ib = out.ic = blocked(out.im);
        out.quotient = std::move(quotient);
        return out;
    }
    out.im = {true, MullerStates{accepted_keys(by_states)}, std::nullopt};

    QuotientLoops loops;
    for (auto& set : enumerate_state_loops(qs, capacity)) {
        auto it = by_states.slots.find(set);
        if (it == by_states.slots.end()) throw std::logic_error("quotient loop without an acceptor loop above it");
        loops.accepting.push_back(it->second.accepted ? 1 : 0);
        loops.sets.push_back(std::move(set));
    }
    out.ip = parity_verdict(qs, loops);
    out.ib = embedded_verdict(qs, loops, true);
    out.ic = embedded_verdict(qs, loops, false);
    out.quotient = std::move(quotient);
    return out;
}

bool FiniteAutomaton::accepts(const Word& w) const {
    State q = initial;
    for (Symbol a : w) q = next(q, a);
    return accepting.contains(q);
}

std::vector<DecompositionTerm> trivial_decomposition(const Acceptor& a, std::size_t capacity) {
    const auto* muller = std::get_if<MullerStates>(&a.acceptance());
    if (muller == nullptr) throw Error(ErrorKind::NotMuller, "decomposition needs a state-Muller acceptor");
    if (!is_trivial(a, capacity)) throw Error(ErrorKind::NotTrivial, "right congruence has more than one class");
    const auto& s = a.structure();
    const int k = s.symbol_count();
    const Bitset reach = s.reachable();
    std::vector<DecompositionTerm> out;
    for (const auto& loop : muller->table) {
        auto sccs = nontrivial_sccs(s, loop);
        if (sccs.size() != 1 || !(sccs.front() == loop) || !loop.is_subset_of(reach)) continue;
        DecompositionTerm term;
        term.loop = loop;
        term.anchor = loop.first();
        std::map<std::pair<State, Bitset>, State> ids;
        std::vector<std::pair<State, Bitset>> nodes;
        std::vector<State> delta;
        std::deque<State> queue;
        State dead = kNoState;
        auto intern = [&](const std::pair<State, Bitset>& node) {
            auto [it, fresh] = ids.emplace(node, static_cast<State>(nodes.size()));
            if (fresh) {
                nodes.push_back(node);
                queue.push_back(it->second);
            }
            return it->second;
        };
        intern({term.anchor, Bitset{}});
        while (!queue.empty()) {
            State cur = queue.front();
            queue.pop_front();
            if (cur == dead) continue;
            auto [q, visited] = nodes[cur];
            for (Symbol c = 0; c < k; ++c) {
                State t = s.next(q, c);
                State to;
                if (loop.contains(t)) {
                    Bitset v = visited;
                    v.insert(t);
                    to = intern({t, v});
                } else {
                    if (dead == kNoState) {
                        dead = static_cast<State>(nodes.size());
                        nodes.push_back({kNoState, Bitset{}});
                    }
                    to = dead;
                }
                delta.resize(nodes.size() * static_cast<std::size_t>(k), kNoState);
                delta[static_cast<std::size_t>(cur) * k + c] = to;
            }
        }
        delta.resize(nodes.size() * static_cast<std::size_t>(k), kNoState);
        if (dead != kNoState)
            for (Symbol c = 0; c < k; ++c) delta[static_cast<std::size_t>(dead) * k + c] = dead;
        term.words.alphabet = s.alphabet();
        term.words.state_count = static_cast<int>(nodes.size());
        term.words.initial = 0;
        term.words.delta = std::move(delta);
        auto fin = ids.find({term.anchor, loop});
        if (fin != ids.end()) term.words.accepting.insert(fin->second);
        out.push_back(std::move(term));
    }
    return out;
}

bool decomposition_accepts(const std::vector<DecompositionTerm>& terms, const LassoWord& w) {
    const Word& v = w.cycle();
    const int len = static_cast<int>(v.size());
    for (const auto& term : terms) {
        const auto& dfa = term.words;
        // cut[o]: offsets at which a nonempty factor in R, started at offset o
        // of the periodic tail, can end.
        std::vector<Bitset> cut(static_cast<std::size_t>(len));
        for (int o = 0; o < len; ++o) {
            std::vector<char> seen(static_cast<std::size_t>(dfa.state_count) * static_cast<std::size_t>(len), 0);
            std::deque<std::pair<State, int>> queue{{dfa.initial, o}};
            seen[static_cast<std::size_t>(dfa.initial) * len + o] = 1;
            while (!queue.empty()) {
                auto [q, off] = queue.front();
                queue.pop_front();
                State t = dfa.next(q, v[off]);
                int next = (off + 1) % len;
                if (dfa.accepting.contains(t)) cut[o].insert(next);
                auto& mark = seen[static_cast<std::size_t>(t) * len + next];
                if (mark == 0) {
                    mark = 1;
                    queue.emplace_back(t, next);
                }
            }
        }
        // Infinitely many cuts exist iff the offset graph has a cycle.
        for (int o = 0; o < len; ++o) {
            Bitset reach = cut[o];
            std::vector<int> stack = reach.members();
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : cut[x].members())
                    if (!reach.contains(y)) {
                        reach.insert(y);
                        stack.push_back(y);
                    }
            }
            if (reach.contains(o)) return true;
        }
    }
    return false;
}

}  // namespace omega
