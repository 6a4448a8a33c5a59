#include "omega/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

namespace omega {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptyAlphabet: return "EmptyAlphabet";
        case ErrorKind::InvalidAlphabet: return "InvalidAlphabet";
        case ErrorKind::IncompleteTransition: return "IncompleteTransition";
        case ErrorKind::DanglingReference: return "DanglingReference";
        case ErrorKind::InvalidAcceptance: return "InvalidAcceptance";
        case ErrorKind::UnknownSymbol: return "UnknownSymbol";
        case ErrorKind::InvalidLasso: return "InvalidLasso";
        case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
        case ErrorKind::CapacityExceeded: return "CapacityExceeded";
        case ErrorKind::UnsupportedConversion: return "UnsupportedConversion";
        case ErrorKind::NotWeak: return "NotWeak";
        case ErrorKind::NotTrivial: return "NotTrivial";
        case ErrorKind::NotMuller: return "NotMuller";
        case ErrorKind::UnknownFixture: return "UnknownFixture";
        case ErrorKind::SamplingExhausted: return "SamplingExhausted";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Error";
}

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error(ErrorKind::EmptyAlphabet, "alphabet has no symbols");
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.empty()) throw Error(ErrorKind::InvalidAlphabet, "empty symbol token");
        for (char c : s) {
            if (std::isspace(static_cast<unsigned char>(c)) != 0 || c == '.' || c == ':' ||
                c == ';' || c == '#')
                throw Error(ErrorKind::InvalidAlphabet, "symbol '" + s + "' contains a reserved character");
        }
        if (!seen.insert(s).second) throw Error(ErrorKind::InvalidAlphabet, "duplicate symbol '" + s + "'");
    }
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] == token) return static_cast<Symbol>(i);
    return std::nullopt;
}

Symbol Alphabet::index(std::string_view token) const {
    if (auto s = find(token)) return *s;
    throw Error(ErrorKind::UnknownSymbol, "symbol '" + std::string(token) + "' not in alphabet");
}

bool Alphabet::single_char() const {
    return std::all_of(symbols_.begin(), symbols_.end(), [](const std::string& s) { return s.size() == 1; });
}

// ------------------------------------------------------------- structures

PartialStructure::PartialStructure(Alphabet alpha, int states, State init)
    : alphabet(std::move(alpha)),
      state_count(states),
      initial(init),
      delta(static_cast<std::size_t>(states) * static_cast<std::size_t>(alphabet.size()), kNoState) {}

TransitionStructure::TransitionStructure(const PartialStructure& partial)
    : alphabet_(partial.alphabet), state_count_(partial.state_count), initial_(partial.initial), delta_(partial.delta) {
    if (alphabet_.size() == 0) throw Error(ErrorKind::EmptyAlphabet, "alphabet has no symbols");
    if (state_count_ <= 0) throw Error(ErrorKind::DanglingReference, "state count must be positive");
    if (initial_ < 0 || initial_ >= state_count_)
        throw Error(ErrorKind::DanglingReference, "initial state " + std::to_string(initial_) + " does not exist");
    if (delta_.size() != static_cast<std::size_t>(state_count_) * static_cast<std::size_t>(alphabet_.size()))
        throw Error(ErrorKind::DanglingReference, "transition table has the wrong shape");
    for (State q = 0; q < state_count_; ++q) {
        for (Symbol a = 0; a < alphabet_.size(); ++a) {
            State t = next(q, a);
            if (t == kNoState)
                throw Error(ErrorKind::IncompleteTransition,
                            "missing transition (" + std::to_string(q) + ", " + alphabet_.name(a) + ")");
            if (t < 0 || t >= state_count_)
                throw Error(ErrorKind::DanglingReference, "transition target " + std::to_string(t) + " does not exist");
        }
    }
}

TransitionStructure TransitionStructure::rerooted(State q) const {
    TransitionStructure copy = *this;
    copy.initial_ = q;
    return copy;
}

Bitset TransitionStructure::reachable() const {
    Bitset seen;
    std::vector<State> stack{initial_};
    seen.insert(initial_);
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        for (Symbol a = 0; a < symbol_count(); ++a) {
            State t = next(q, a);
            if (!seen.contains(t)) {
                seen.insert(t);
                stack.push_back(t);
            }
        }
    }
    return seen;
}

TransitionStructure complete_with_sink(const PartialStructure& partial) {
    bool complete = std::none_of(partial.delta.begin(), partial.delta.end(), [](State t) { return t == kNoState; });
    if (complete) return TransitionStructure(partial);
    const int k = partial.alphabet.size();
    const State sink = partial.state_count;
    PartialStructure filled(partial.alphabet, partial.state_count + 1, partial.initial);
    for (State q = 0; q < partial.state_count; ++q)
        for (Symbol a = 0; a < k; ++a) {
            State t = partial.get(q, a);
            filled.set(q, a, t == kNoState ? sink : t);
        }
    for (Symbol a = 0; a < k; ++a) filled.set(sink, a, sink);
    return TransitionStructure(filled);
}

// ------------------------------------------------------------- acceptance

const char* to_string(AcceptanceKind kind) {
    switch (kind) {
        case AcceptanceKind::Buchi: return "buchi";
        case AcceptanceKind::CoBuchi: return "cobuchi";
        case AcceptanceKind::Parity: return "parity";
        case AcceptanceKind::Muller: return "muller";
        case AcceptanceKind::TMuller: return "tmuller";
    }
    return "?";
}

std::optional<AcceptanceKind> parse_acceptance_kind(std::string_view token) {
    for (auto k : {AcceptanceKind::Buchi, AcceptanceKind::CoBuchi, AcceptanceKind::Parity, AcceptanceKind::Muller,
                   AcceptanceKind::TMuller})
        if (token == to_string(k)) return k;
    return std::nullopt;
}

AcceptanceKind kind_of(const Acceptance& acc) {
    return static_cast<AcceptanceKind>(acc.index());
}

bool is_accepting(const Acceptance& acc, const Bitset& inf_states, const Bitset& inf_transitions) {
    struct Visitor {
        const Bitset& states;
        const Bitset& transitions;
        bool operator()(const Buchi& b) const { return states.intersects(b.accepting); }
        bool operator()(const CoBuchi& c) const { return !states.intersects(c.accepting); }
        bool operator()(const Parity& p) const {
            int best = -1;
            for (int q : states.members())
                if (best < 0 || p.colors[q] < best) best = p.colors[q];
            return best >= 0 && best % 2 == 1;
        }
        bool operator()(const MullerStates& m) const {
            return std::binary_search(m.table.begin(), m.table.end(), states);
        }
        bool operator()(const MullerTransitions& m) const {
            return std::binary_search(m.table.begin(), m.table.end(), transitions);
        }
    };
    return std::visit(Visitor{inf_states, inf_transitions}, acc);
}

namespace {

void check_state_set(const Bitset& s, int n, const char* what) {
    for (int q : s.members())
        if (q >= n)
            throw Error(ErrorKind::DanglingReference, std::string(what) + " references state " + std::to_string(q));
}

void canonicalize_table(std::vector<Bitset>& table, const char* what) {
    for (const auto& entry : table)
        if (entry.empty()) throw Error(ErrorKind::InvalidAcceptance, std::string(what) + " table has an empty entry");
    std::sort(table.begin(), table.end());
    if (std::adjacent_find(table.begin(), table.end()) != table.end())
        throw Error(ErrorKind::InvalidAcceptance, std::string(what) + " table has a duplicate entry");
}

}  // namespace

Acceptor validate(const TransitionStructure& structure, Acceptance acceptance) {
    const int n = structure.state_count();
    struct Checker {
        const TransitionStructure& s;
        int n;
        void operator()(Buchi& b) const { check_state_set(b.accepting, n, "buchi set"); }
        void operator()(CoBuchi& c) const { check_state_set(c.accepting, n, "cobuchi set"); }
        void operator()(Parity& p) const {
            if (static_cast<int>(p.colors.size()) != n) {
                if (static_cast<int>(p.colors.size()) > n)
                    throw Error(ErrorKind::DanglingReference, "parity coloring references state " + std::to_string(n));
                throw Error(ErrorKind::InvalidAcceptance, "parity coloring must color every state");
            }
            for (int c : p.colors)
                if (c < 0 || c > 2 * n)
                    throw Error(ErrorKind::InvalidAcceptance, "parity color " + std::to_string(c) + " out of range");
        }
        void operator()(MullerStates& m) const {
            for (const auto& e : m.table) check_state_set(e, n, "muller table");
            canonicalize_table(m.table, "muller");
        }
        void operator()(MullerTransitions& m) const {
            for (const auto& e : m.table)
                for (int id : e.members())
                    if (id >= s.transition_count())
                        throw Error(ErrorKind::DanglingReference, "transition table references transition id " +
                                                                       std::to_string(id));
            canonicalize_table(m.table, "transition muller");
        }
    };
    std::visit(Checker{structure, n}, acceptance);
    return Acceptor(structure, std::move(acceptance));
}

Acceptor validate(const PartialStructure& structure, Acceptance acceptance) {
    return validate(TransitionStructure(structure), std::move(acceptance));
}

Acceptor Acceptor::rerooted(State q) const {
    return Acceptor(structure_.rerooted(q), acceptance_);
}

// ------------------------------------------------------------------ runs

LassoWord::LassoWord(Word spoke, Word cycle) : spoke_(std::move(spoke)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw Error(ErrorKind::InvalidLasso, "lasso cycle must be nonempty");
}

RunAnalysis lasso_run(const TransitionStructure& structure, const LassoWord& w) {
    return lasso_run(structure, structure.initial(), w);
}

RunAnalysis lasso_run(const TransitionStructure& structure, State from, const LassoWord& w) {
    const int k = structure.symbol_count();
    auto check = [k](const Word& word) {
        for (Symbol a : word)
            if (a < 0 || a >= k) throw Error(ErrorKind::UnknownSymbol, "symbol index " + std::to_string(a));
    };
    check(w.spoke());
    check(w.cycle());

    State q = structure.run(from, w.spoke());
    // boundary_seen[q] = repetition index at which q was a cycle boundary
    std::vector<int> boundary_seen(static_cast<std::size_t>(structure.state_count()), -1);
    std::vector<State> boundaries;
    int rep = 0;
    while (boundary_seen[q] < 0) {
        boundary_seen[q] = rep++;
        boundaries.push_back(q);
        q = structure.run(q, w.cycle());
    }
    RunAnalysis out;
    out.entry_index = boundary_seen[q];
    for (std::size_t r = static_cast<std::size_t>(out.entry_index); r < boundaries.size(); ++r) {
        State p = boundaries[r];
        for (Symbol a : w.cycle()) {
            out.inf_transitions.insert(structure.transition_id(p, a));
            p = structure.next(p, a);
            out.inf_states.insert(p);
        }
    }
    return out;
}

bool accepts_from(const Acceptor& acceptor, State from, const LassoWord& w) {
    auto run = lasso_run(acceptor.structure(), from, w);
    return is_accepting(acceptor.acceptance(), run.inf_states, run.inf_transitions);
}

bool accepts(const Acceptor& acceptor, const LassoWord& w) {
    return accepts_from(acceptor, acceptor.structure().initial(), w);
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
    std::string out;
    const bool compact = alphabet.single_char();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!compact && i > 0) out += '.';
        out += alphabet.name(w[i]);
    }
    return out;
}

std::string format_lasso(const Alphabet& alphabet, const LassoWord& w) {
    return format_word(alphabet, w.spoke()) + ":" + format_word(alphabet, w.cycle());
}

}  // namespace omega
