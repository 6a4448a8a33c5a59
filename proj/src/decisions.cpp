#include "omega/decisions.hpp"

#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace omega {

namespace {

std::size_t profile_hash(const Profile& p) {
    std::size_t h = 0;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (State t : p.target) mix(static_cast<std::size_t>(t));
    for (const auto& b : p.visited_states) mix(b.hash());
    for (const auto& b : p.visited_transitions) mix(b.hash());
    return h;
}

Profile identity_profile(const Acceptor& a) {
    const int n = a.state_count();
    Profile p;
    p.target.resize(static_cast<std::size_t>(n));
    for (State q = 0; q < n; ++q) p.target[q] = q;
    p.visited_states.resize(static_cast<std::size_t>(n));
    for (State q = 0; q < n; ++q) p.visited_states[q].insert(q);
    if (!is_state_based(a.acceptance())) p.visited_transitions.assign(static_cast<std::size_t>(n), Bitset{});
    return p;
}

Profile letter_profile(const Acceptor& a, Symbol c) {
    const auto& s = a.structure();
    Profile p = identity_profile(a);
    for (State q = 0; q < s.state_count(); ++q) {
        p.target[q] = s.next(q, c);
        p.visited_states[q].insert(p.target[q]);
        if (!p.visited_transitions.empty()) p.visited_transitions[q].insert(s.transition_id(q, c));
    }
    p.representative = {c};
    return p;
}

/// Index at which the orbit start, f(start), f(f(start)), ... enters its
/// cycle, or nullopt when the orbit ends in a fixed point.
std::optional<int> unsettled_entry(const std::vector<State>& f, State start) {
    std::map<State, int> at;
    State c = start;
    for (int i = 0;; ++i) {
        auto [it, fresh] = at.emplace(c, i);
        if (!fresh) {
            if (f[c] == c) return std::nullopt;
            return it->second;
        }
        c = f[c];
    }
}

}  // namespace

Profile Profile::then(const Profile& next) const {
    Profile out;
    const std::size_t n = target.size();
    out.target.resize(n);
    out.visited_states.resize(n);
    if (!visited_transitions.empty()) out.visited_transitions.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        State mid = target[p];
        out.target[p] = next.target[mid];
        out.visited_states[p] = visited_states[p] | next.visited_states[mid];
        if (!visited_transitions.empty())
            out.visited_transitions[p] = visited_transitions[p] | next.visited_transitions[mid];
    }
    out.representative = representative;
    out.representative.insert(out.representative.end(), next.representative.begin(), next.representative.end());
    return out;
}

Profile profile_of(const Acceptor& a, const Word& w) {
    Profile p = identity_profile(a);
    for (Symbol c : w) {
        if (c < 0 || c >= a.alphabet().size()) throw Error(ErrorKind::UnknownSymbol, "symbol index " + std::to_string(c));
        p = p.then(letter_profile(a, c));
    }
    return p;
}

std::optional<std::size_t> ProfileMonoid::find(const Profile& p) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == p) return i;
    return std::nullopt;
}

ProfileMonoid profile_monoid(const Acceptor& a, std::size_t capacity) {
    const int k = a.alphabet().size();
    ProfileMonoid m;
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
    auto intern = [&](Profile p) {
        auto& bucket = buckets[profile_hash(p)];
        for (std::size_t i : bucket)
            if (m.elements[i] == p) return i;
        if (m.elements.size() >= capacity)
            throw Error(ErrorKind::CapacityExceeded, "profile monoid exceeds " + std::to_string(capacity) + " elements");
        bucket.push_back(m.elements.size());
        m.elements.push_back(std::move(p));
        return m.elements.size() - 1;
    };
    std::vector<Profile> letters;
    for (Symbol c = 0; c < k; ++c) {
        letters.push_back(letter_profile(a, c));
        m.generators.push_back(intern(letters.back()));
    }
    for (std::size_t i = 0; i < m.elements.size(); ++i)
        for (Symbol c = 0; c < k; ++c) intern(m.elements[i].then(letters[c]));
    return m;
}

bool omega_accept(const Acceptor& a, const Profile& s, const Profile& t, State from) {
    std::map<State, int> at;
    std::vector<State> seq;
    State c = s.target[from];
    while (at.emplace(c, static_cast<int>(seq.size())).second) {
        seq.push_back(c);
        c = t.target[c];
    }
    Bitset inf_states, inf_transitions;
    for (std::size_t i = static_cast<std::size_t>(at[c]); i < seq.size(); ++i) {
        inf_states |= t.visited_states[seq[i]];
        if (!t.visited_transitions.empty()) inf_transitions |= t.visited_transitions[seq[i]];
    }
    return is_accepting(a.acceptance(), inf_states, inf_transitions);
}

RespectiveResult is_respective(const Acceptor& a, std::size_t capacity) {
    return is_respective(a, rightcon_quotient(a), capacity);
}

RespectiveResult is_respective(const Acceptor& a, const Quotient& q, std::size_t capacity) {
    const auto& s = a.structure();
    ProfileMonoid m = profile_monoid(a, capacity);
    const Profile id = identity_profile(a);

    // Reachable acceptor states in breadth-first order with access words.
    std::vector<State> order{s.initial()};
    std::vector<Word> words(static_cast<std::size_t>(s.state_count()));
    std::vector<char> seen(static_cast<std::size_t>(s.state_count()), 0);
    seen[s.initial()] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Symbol c = 0; c < s.symbol_count(); ++c) {
            State t = s.next(order[i], c);
            if (seen[t] != 0) continue;
            seen[t] = 1;
            words[t] = words[order[i]];
            words[t].push_back(c);
            order.push_back(t);
        }

    std::vector<State> action(static_cast<std::size_t>(q.size()));
    for (std::size_t e = 0; e < m.elements.size(); ++e) {
        const Profile& pe = m.elements[e];
        for (State c = 0; c < q.size(); ++c) action[c] = q.projection[pe.target[q.anchors[c]]];
        for (State p : order) {
            if (!omega_accept(a, id, pe, p)) continue;
            if (unsettled_entry(action, q.projection[p])) return {false, words[p], pe.representative};
        }
    }
    return {};
}

bool respective_pair_check(const Acceptor& a, const Word& x, const Word& u) {
    return respective_pair_check(a, rightcon_quotient(a), x, u);
}

bool respective_pair_check(const Acceptor& a, const Quotient& q, const Word& x, const Word& u) {
    LassoWord w(x, u);
    if (!accepts(a, w)) return true;
    const auto& qs = q.structure;
    State c = qs.run(qs.initial(), x);
    for (int i = 0; i <= q.size(); ++i) {
        State next = qs.run(c, u);
        if (next == c) return true;
        c = next;
    }
    return false;
}

NonCountingResult is_non_counting(const Acceptor& a, std::size_t capacity) {
    return is_non_counting(a, rightcon_quotient(a), capacity);
}

NonCountingResult is_non_counting(const Acceptor& a, const Quotient& q, std::size_t capacity) {
    const auto& qs = q.structure;
    const int n = q.size();
    const int k = qs.symbol_count();
    std::vector<std::vector<State>> maps;
    std::vector<Word> reps;
    std::map<std::vector<State>, std::size_t> ids;
    std::vector<State> identity(static_cast<std::size_t>(n));
    for (State c = 0; c < n; ++c) identity[c] = c;
    ids.emplace(identity, 0);
    maps.push_back(identity);
    reps.emplace_back();
    for (std::size_t i = 0; i < maps.size(); ++i) {
        for (Symbol x = 0; x < k; ++x) {
            std::vector<State> next(static_cast<std::size_t>(n));
            for (State c = 0; c < n; ++c) next[c] = qs.next(maps[i][c], x);
            if (ids.contains(next)) continue;
            if (maps.size() >= capacity)
                throw Error(ErrorKind::CapacityExceeded, "transformation monoid exceeds capacity");
            ids.emplace(next, maps.size());
            Word w = reps[i];
            w.push_back(x);
            maps.push_back(std::move(next));
            reps.push_back(std::move(w));
        }
        // Check elements as they are produced so witnesses stay short.
        for (State c = 0; c < n; ++c) {
            auto entry = unsettled_entry(maps[i], c);
            if (!entry) continue;
            const auto& s = a.structure();
            const Word& u = q.representatives[c];
            const Word& v = reps[i];
            State p = s.run(s.initial(), u);
            for (int j = 0; j < *entry; ++j) p = s.run(p, v);
            State p1 = s.run(p, v);
            auto sep = state_equivalent(a, p, p1);
            if (!sep.witness) throw std::logic_error("quotient classes failed to separate");
            return {false, CountingWitness{u, v, *sep.witness, *entry}};
        }
    }
    return {};
}

}  // namespace omega
