#include "omega/ops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

#include "omega/graph.hpp"

namespace omega {

Product product(const TransitionStructure& a, const TransitionStructure& b) {
    if (!(a.alphabet() == b.alphabet())) throw Error(ErrorKind::AlphabetMismatch, "operands use different alphabets");
    const int k = a.symbol_count();
    std::map<std::pair<State, State>, State> ids;
    std::vector<std::pair<State, State>> pairs;
    std::vector<State> delta;
    std::deque<State> queue;
    auto intern = [&](std::pair<State, State> p) {
        auto [it, fresh] = ids.emplace(p, static_cast<State>(pairs.size()));
        if (fresh) {
            pairs.push_back(p);
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern({a.initial(), b.initial()});
    while (!queue.empty()) {
        State p = queue.front();
        queue.pop_front();
        auto [qa, qb] = pairs[p];
        delta.resize(pairs.size() * static_cast<std::size_t>(k), kNoState);
        for (Symbol s = 0; s < k; ++s) {
            State t = intern({a.next(qa, s), b.next(qb, s)});
            delta.resize(pairs.size() * static_cast<std::size_t>(k), kNoState);
            delta[static_cast<std::size_t>(p) * k + s] = t;
        }
    }
    PartialStructure partial(a.alphabet(), static_cast<int>(pairs.size()), 0);
    partial.delta = std::move(delta);
    return {TransitionStructure(partial), std::move(pairs)};
}

namespace {

/// Renumbers colors to the smallest values with the same order and parities.
std::vector<int> compact_colors(const std::vector<int>& colors) {
    std::vector<int> distinct(colors);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::map<int, int> to;
    int prev = -1;
    for (int c : distinct) {
        int v = prev + 1;
        if ((v & 1) != (c & 1)) ++v;
        to[c] = v;
        prev = v;
    }
    std::vector<int> out;
    out.reserve(colors.size());
    for (int c : colors) out.push_back(to[c]);
    return out;
}

std::vector<Bitset> rejecting_keys(const LoopTable& table) {
    std::vector<Bitset> out;
    for (std::size_t i = 0; i < table.entries.size(); ++i)
        if (!table.entries[i].accepting) out.push_back(table.key(i));
    return out;
}

std::vector<Bitset> accepting_keys(const LoopTable& table) {
    std::vector<Bitset> out;
    for (std::size_t i = 0; i < table.entries.size(); ++i)
        if (table.entries[i].accepting) out.push_back(table.key(i));
    return out;
}

}  // namespace

Acceptor complement(const Acceptor& a, std::size_t capacity) {
    const auto& s = a.structure();
    const auto& acc = a.acceptance();
    if (const auto* b = std::get_if<Buchi>(&acc)) return validate(s, CoBuchi{b->accepting});
    if (const auto* c = std::get_if<CoBuchi>(&acc)) return validate(s, Buchi{c->accepting});
    if (const auto* p = std::get_if<Parity>(&acc)) {
        std::vector<int> colors = p->colors;
        for (int& c : colors) ++c;
        if (*std::max_element(colors.begin(), colors.end()) > 2 * s.state_count()) colors = compact_colors(colors);
        return validate(s, Parity{std::move(colors)});
    }
    auto table = loopable_sets(a, capacity);
    auto keys = rejecting_keys(table);
    if (std::holds_alternative<MullerStates>(acc)) return validate(s, MullerStates{std::move(keys)});
    return validate(s, MullerTransitions{std::move(keys)});
}

namespace {

bool combine_verdicts(bool x, bool y, BoolOp op) { return op == BoolOp::Union ? (x || y) : (x && y); }

/// Projections of a product edge set onto one operand.
struct Projection {
    Bitset states;
    Bitset transitions;
};

Projection project(const Product& p, const TransitionStructure& side, bool first, const Bitset& edges) {
    Projection out;
    for (int id : edges.members()) {
        auto t = p.structure.transition(id);
        State from = first ? p.pairs[t.from].first : p.pairs[t.from].second;
        State to = first ? p.pairs[t.to].first : p.pairs[t.to].second;
        out.states.insert(from);
        out.states.insert(to);
        out.transitions.insert(side.transition_id(from, t.symbol));
    }
    return out;
}

bool verdict(const Acceptor& side, const Projection& pr) {
    return is_accepting(side.acceptance(), pr.states, pr.transitions);
}

}  // namespace

Acceptor combine(const Acceptor& a, const Acceptor& b, BoolOp op, std::size_t capacity) {
    Product p = product(a.structure(), b.structure());
    const auto& ps = p.structure;
    const bool by_transitions = !is_state_based(a.acceptance()) || !is_state_based(b.acceptance());
    std::vector<Bitset> table;
    if (by_transitions) {
        for (auto& e : enumerate_transition_loops(ps, capacity))
            if (combine_verdicts(verdict(a, project(p, a.structure(), true, e)),
                                 verdict(b, project(p, b.structure(), false, e)), op))
                table.push_back(std::move(e));
        return validate(ps, MullerTransitions{std::move(table)});
    }
    for (auto& states : enumerate_state_loops(ps, capacity)) {
        Bitset e = internal_edges(ps, states);
        if (combine_verdicts(verdict(a, project(p, a.structure(), true, e)),
                             verdict(b, project(p, b.structure(), false, e)), op))
            table.push_back(std::move(states));
    }
    return validate(ps, MullerStates{std::move(table)});
}

Acceptor convert(const Acceptor& a, AcceptanceKind target, std::size_t capacity) {
    const auto& s = a.structure();
    const AcceptanceKind from = a.kind();
    if (from == target) return a;
    const auto& acc = a.acceptance();
    switch (target) {
        case AcceptanceKind::Parity: {
            std::vector<int> colors(static_cast<std::size_t>(s.state_count()));
            if (const auto* b = std::get_if<Buchi>(&acc)) {
                for (State q = 0; q < s.state_count(); ++q) colors[q] = b->accepting.contains(q) ? 1 : 2;
                return validate(s, Parity{std::move(colors)});
            }
            if (const auto* c = std::get_if<CoBuchi>(&acc)) {
                for (State q = 0; q < s.state_count(); ++q) colors[q] = c->accepting.contains(q) ? 0 : 1;
                return validate(s, Parity{std::move(colors)});
            }
            break;
        }
        case AcceptanceKind::Muller: {
            if (from == AcceptanceKind::TMuller) break;
            auto keys = accepting_keys(loopable_sets(a, capacity));
            return validate(s, MullerStates{std::move(keys)});
        }
        case AcceptanceKind::TMuller: {
            auto keys = accepting_keys(transition_loop_table(a, capacity));
            return validate(s, MullerTransitions{std::move(keys)});
        }
        default: break;
    }
    throw Error(ErrorKind::UnsupportedConversion,
                std::string("cannot convert ") + to_string(from) + " to " + to_string(target));
}

namespace {

/// Searches strongly connected product edge sets for one on which the two
/// operands disagree. Subsets are generated by removing, one at a time,
/// every edge carrying one operand feature (a target state for state-based
/// conditions, a transition otherwise); the verdict of a set depends on
/// features only, so this reaches every distinct verdict pair.
class DisagreementSearch {
public:
    DisagreementSearch(const Acceptor& a, const Acceptor& b, const Product& p, std::size_t capacity)
        : a_(a), b_(b), p_(p), capacity_(capacity) {
        const auto& ps = p.structure;
        const int m = ps.transition_count();
        const int fa = is_state_based(a.acceptance()) ? a.state_count() : a.structure().transition_count();
        feature_a_.resize(static_cast<std::size_t>(m));
        feature_b_.resize(static_cast<std::size_t>(m));
        for (int id = 0; id < m; ++id) {
            auto t = ps.transition(id);
            auto [fa_from, fb_from] = p.pairs[t.from];
            auto [fa_to, fb_to] = p.pairs[t.to];
            feature_a_[id] = is_state_based(a.acceptance()) ? fa_to : a.structure().transition_id(fa_from, t.symbol);
            feature_b_[id] = fa + (is_state_based(b.acceptance()) ? fb_to : b.structure().transition_id(fb_from, t.symbol));
        }
    }

    bool differs(const Bitset& edges) const {
        return verdict(a_, project(p_, a_.structure(), true, edges)) !=
               verdict(b_, project(p_, b_.structure(), false, edges));
    }

    std::optional<Bitset> find() {
        const auto& ps = p_.structure;
        std::vector<Bitset> work = nontrivial_edge_sccs(ps, internal_edges(ps, ps.reachable()));
        std::reverse(work.begin(), work.end());
        while (!work.empty()) {
            Bitset e = std::move(work.back());
            work.pop_back();
            if (!seen_.insert(e).second) continue;
            if (seen_.size() > capacity_)
                throw Error(ErrorKind::CapacityExceeded, "equivalence search exceeded capacity");
            if (differs(e)) return e;
            Bitset feats;
            for (int id : e.members()) {
                feats.insert(feature_a_[id]);
                feats.insert(feature_b_[id]);
            }
            if (e.size() == 1) continue;
            auto members = feats.members();
            for (auto it = members.rbegin(); it != members.rend(); ++it) {
                Bitset rest;
                for (int id : e.members())
                    if (feature_a_[id] != *it && feature_b_[id] != *it) rest.insert(id);
                for (auto& sub : nontrivial_edge_sccs(ps, rest))
                    if (!seen_.contains(sub)) work.push_back(std::move(sub));
            }
        }
        return std::nullopt;
    }

    /// Shrinks a disagreeing edge set while some strongly connected subset
    /// obtained by dropping one edge still disagrees.
    Bitset shrink(Bitset e) const {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int id : e.members()) {
                Bitset rest = e;
                rest.erase(id);
                for (auto& sub : nontrivial_edge_sccs(p_.structure, rest))
                    if (differs(sub)) {
                        e = std::move(sub);
                        progress = true;
                        break;
                    }
                if (progress) break;
            }
        }
        return e;
    }

private:
    const Acceptor& a_;
    const Acceptor& b_;
    const Product& p_;
    std::size_t capacity_;
    std::vector<int> feature_a_, feature_b_;
    std::unordered_set<Bitset, BitsetHash> seen_;
};

}  // namespace

EquivalenceResult equivalent(const Acceptor& a, const Acceptor& b, std::size_t capacity) {
    Product p = product(a.structure(), b.structure());
    DisagreementSearch search(a, b, p, capacity);
    auto found = search.find();
    if (!found) return {};
    Bitset edges = search.shrink(std::move(*found));
    const auto& ps = p.structure;
    Word spoke = shortest_path(ps, ps.initial(), states_of_edges(ps, edges));
    State entry = ps.run(ps.initial(), spoke);
    Word cycle = covering_cycle(ps, entry, edges);
    return {false, LassoWord(std::move(spoke), std::move(cycle))};
}

}  // namespace omega
