#include "omega/graph.hpp"

#include <algorithm>
#include <deque>

namespace omega {

namespace {

/// Iterative Tarjan over an adjacency list; returns component ids per node
/// (-1 for nodes outside the graph).
struct Tarjan {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> index, low, comp;
    std::vector<char> on_stack;
    std::vector<int> stack;
    int counter = 0, comps = 0;

    explicit Tarjan(const std::vector<std::vector<int>>& a)
        : adj(a), index(a.size(), -1), low(a.size(), 0), comp(a.size(), -1), on_stack(a.size(), 0) {}

    void run(int root) {
        struct Frame {
            int v;
            std::size_t child;
        };
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& f = call.back();
            if (f.child < adj[f.v].size()) {
                int w = adj[f.v][f.child++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w] != 0) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            int v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comps;
                } while (w != v);
                ++comps;
            }
        }
    }
};

}  // namespace

std::vector<Bitset> nontrivial_sccs(const TransitionStructure& s, const Bitset& states) {
    const int n = s.state_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<char> self_loop(static_cast<std::size_t>(n), 0);
    auto members = states.members();
    for (int q : members)
        for (Symbol a = 0; a < s.symbol_count(); ++a) {
            State t = s.next(q, a);
            if (!states.contains(t)) continue;
            adj[q].push_back(t);
            if (t == q) self_loop[q] = 1;
        }
    Tarjan tj(adj);
    for (int q : members)
        if (tj.index[q] < 0) tj.run(q);
    std::vector<Bitset> by_comp(static_cast<std::size_t>(tj.comps));
    std::vector<int> sizes(static_cast<std::size_t>(tj.comps), 0);
    for (int q : members) {
        by_comp[tj.comp[q]].insert(q);
        ++sizes[tj.comp[q]];
    }
    std::vector<Bitset> out;
    for (int c = 0; c < tj.comps; ++c) {
        if (sizes[c] == 1 && self_loop[by_comp[c].first()] == 0) continue;
        out.push_back(std::move(by_comp[c]));
    }
    std::sort(out.begin(), out.end(), [](const Bitset& a, const Bitset& b) { return a.first() < b.first(); });
    return out;
}

std::vector<Bitset> nontrivial_edge_sccs(const TransitionStructure& s, const Bitset& edges) {
    const int n = s.state_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    auto ids = edges.members();
    Bitset nodes;
    for (int id : ids) {
        auto t = s.transition(id);
        adj[t.from].push_back(t.to);
        nodes.insert(t.from);
        nodes.insert(t.to);
    }
    Tarjan tj(adj);
    for (int q : nodes.members())
        if (tj.index[q] < 0) tj.run(q);
    std::vector<Bitset> by_comp(static_cast<std::size_t>(tj.comps));
    std::vector<int> least(static_cast<std::size_t>(tj.comps), n);
    for (int id : ids) {
        auto t = s.transition(id);
        if (tj.comp[t.from] == tj.comp[t.to]) {
            by_comp[tj.comp[t.from]].insert(id);
            least[tj.comp[t.from]] = std::min({least[tj.comp[t.from]], t.from, t.to});
        }
    }
    std::vector<std::pair<int, Bitset>> keyed;
    for (int c = 0; c < tj.comps; ++c)
        if (!by_comp[c].empty()) keyed.emplace_back(least[c], std::move(by_comp[c]));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Bitset> out;
    out.reserve(keyed.size());
    for (auto& [_, e] : keyed) out.push_back(std::move(e));
    return out;
}

Bitset states_of_edges(const TransitionStructure& s, const Bitset& edges) {
    Bitset out;
    for (int id : edges.members()) {
        auto t = s.transition(id);
        out.insert(t.from);
        out.insert(t.to);
    }
    return out;
}

Bitset internal_edges(const TransitionStructure& s, const Bitset& states) {
    Bitset out;
    for (int q : states.members())
        for (Symbol a = 0; a < s.symbol_count(); ++a)
            if (states.contains(s.next(q, a))) out.insert(s.transition_id(q, a));
    return out;
}

namespace {

/// BFS restricted to `edges` (or all edges when `edges` is null) from
/// `from` until `goal(state, incoming edge id)` holds. Returns the word,
/// or nullopt.
template <typename Goal>
std::optional<Word> bfs(const TransitionStructure& s, State from, const Bitset* edges, Goal goal) {
    const int n = s.state_count();
    std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<State> queue{from};
    seen[from] = 1;
    auto rebuild = [&](State q, int last_edge) {
        Word w;
        if (last_edge >= 0) w.push_back(s.transition(last_edge).symbol);
        State cur = last_edge >= 0 ? s.transition(last_edge).from : q;
        while (cur != from) {
            auto t = s.transition(parent_edge[cur]);
            w.push_back(t.symbol);
            cur = t.from;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (Symbol a = 0; a < s.symbol_count(); ++a) {
            int id = s.transition_id(q, a);
            if (edges != nullptr && !edges->contains(id)) continue;
            State t = s.next(q, a);
            if (goal(t, id)) return rebuild(t, id);
            if (seen[t] == 0) {
                seen[t] = 1;
                parent_edge[t] = id;
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

Word shortest_path(const TransitionStructure& s, State from, const Bitset& targets) {
    if (targets.contains(from)) return {};
    auto w = bfs(s, from, nullptr, [&](State t, int) { return targets.contains(t); });
    if (!w) throw Error(ErrorKind::DanglingReference, "target set unreachable");
    return *w;
}

Word covering_cycle(const TransitionStructure& s, State start, const Bitset& edges) {
    Bitset pending = edges;
    Word walk;
    State cur = start;
    // Greedy: walk to the nearest untraversed edge and take it, then return.
    while (!pending.empty()) {
        auto step = bfs(s, cur, &edges, [&](State, int id) { return pending.contains(id); });
        if (!step) throw Error(ErrorKind::DanglingReference, "edge set is not strongly connected");
        for (Symbol a : *step) {
            pending.erase(s.transition_id(cur, a));
            cur = s.next(cur, a);
        }
        walk.insert(walk.end(), step->begin(), step->end());
    }
    if (cur != start) {
        auto back = bfs(s, cur, &edges, [&](State t, int) { return t == start; });
        if (!back) throw Error(ErrorKind::DanglingReference, "edge set is not strongly connected");
        walk.insert(walk.end(), back->begin(), back->end());
    }
    return walk;
}

Word state_covering_cycle(const TransitionStructure& s, State start, const Bitset& states) {
    Bitset edges = internal_edges(s, states);
    Bitset pending = states;
    Word walk;
    State cur = start;
    while (!pending.empty()) {
        auto step = bfs(s, cur, &edges, [&](State t, int) { return pending.contains(t); });
        if (!step) throw Error(ErrorKind::DanglingReference, "state set is not strongly connected");
        for (Symbol a : *step) {
            cur = s.next(cur, a);
            pending.erase(cur);
        }
        walk.insert(walk.end(), step->begin(), step->end());
    }
    if (cur != start || walk.empty()) {
        auto back = bfs(s, cur, &edges, [&](State t, int) { return t == start; });
        if (!back) throw Error(ErrorKind::DanglingReference, "state set is not strongly connected");
        walk.insert(walk.end(), back->begin(), back->end());
    }
    return walk;
}

}  // namespace omega
