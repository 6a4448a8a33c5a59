#include "omega/oaf.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

namespace omega {

namespace {

[[noreturn]] void fail(int line, const std::string& reason) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + reason);
}

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int to_int(const std::string& token, int line, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value < 0)
        fail(line, std::string("expected a nonnegative integer for ") + what + ", got '" + token + "'");
    return value;
}

struct Header {
    std::optional<AcceptanceKind> kind;
    std::optional<Alphabet> alphabet;
    std::optional<int> states;
    std::optional<State> initial;
};

}  // namespace

Acceptor parse_oaf(std::string_view text) {
    Header h;
    bool seen_version = false;
    bool sink = false;
    struct PendingTrans {
        int line;
        State from;
        std::string symbol;
        State to;
    };
    std::vector<PendingTrans> trans;
    std::optional<std::vector<State>> acc_states;
    std::vector<std::pair<int, std::pair<State, int>>> colors;
    std::vector<std::vector<State>> sets;
    std::vector<std::pair<int, std::vector<std::vector<std::string>>>> tsets;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tok = split_ws(raw);
        if (tok.empty()) continue;
        const std::string& d = tok[0];
        if (!seen_version && d != "oaf") fail(line, "first directive must be 'oaf 1'");
        if (d == "oaf") {
            if (seen_version) fail(line, "duplicate 'oaf' directive");
            if (tok.size() != 2 || tok[1] != "1") fail(line, "unsupported version");
            seen_version = true;
        } else if (d == "type") {
            if (tok.size() != 2) fail(line, "expected 'type <kind>'");
            if (h.kind) fail(line, "duplicate 'type'");
            h.kind = parse_acceptance_kind(tok[1]);
            if (!h.kind) fail(line, "unknown acceptance type '" + tok[1] + "'");
        } else if (d == "alphabet") {
            if (h.alphabet) fail(line, "duplicate 'alphabet'");
            h.alphabet = Alphabet(std::vector<std::string>(tok.begin() + 1, tok.end()));
        } else if (d == "states") {
            if (tok.size() != 2) fail(line, "expected 'states <n>'");
            if (h.states) fail(line, "duplicate 'states'");
            h.states = to_int(tok[1], line, "state count");
            if (*h.states == 0) fail(line, "state count must be positive");
        } else if (d == "initial") {
            if (tok.size() != 2) fail(line, "expected 'initial <q>'");
            if (h.initial) fail(line, "duplicate 'initial'");
            h.initial = to_int(tok[1], line, "initial state");
        } else if (d == "trans") {
            if (tok.size() != 4) fail(line, "expected 'trans <q> <sym> <q>'");
            trans.push_back({line, to_int(tok[1], line, "state"), tok[2], to_int(tok[3], line, "state")});
        } else if (d == "complete") {
            if (tok.size() != 2 || tok[1] != "sink") fail(line, "expected 'complete sink'");
            sink = true;
        } else if (d == "acc") {
            if (tok.size() < 2) fail(line, "expected an acceptance directive");
            const std::string& what = tok[1];
            if (what == "states") {
                if (acc_states) fail(line, "duplicate 'acc states'");
                acc_states.emplace();
                for (std::size_t i = 2; i < tok.size(); ++i) acc_states->push_back(to_int(tok[i], line, "state"));
            } else if (what == "color") {
                if (tok.size() != 4) fail(line, "expected 'acc color <q> <c>'");
                colors.push_back({line, {to_int(tok[2], line, "state"), to_int(tok[3], line, "color")}});
            } else if (what == "set") {
                std::vector<State> set;
                for (std::size_t i = 2; i < tok.size(); ++i) set.push_back(to_int(tok[i], line, "state"));
                sets.push_back(std::move(set));
            } else if (what == "tset") {
                std::vector<std::vector<std::string>> triples;
                std::string rest = raw.substr(raw.find("tset") + 4);
                std::size_t start = 0;
                while (start <= rest.size()) {
                    std::size_t semi = rest.find(';', start);
                    auto part = split_ws(rest.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
                    if (part.size() != 3) fail(line, "expected '<q> <sym> <q>' in transition set");
                    triples.push_back(std::move(part));
                    if (semi == std::string::npos) break;
                    start = semi + 1;
                }
                tsets.emplace_back(line, std::move(triples));
            } else {
                fail(line, "unknown acceptance directive '" + what + "'");
            }
        } else {
            fail(line, "unknown directive '" + d + "'");
        }
    }
    ++line;
    if (!seen_version) fail(line, "missing 'oaf 1'");
    if (!h.kind) fail(line, "missing 'type'");
    if (!h.alphabet) fail(line, "missing 'alphabet'");
    if (!h.states) fail(line, "missing 'states'");
    if (!h.initial) fail(line, "missing 'initial'");
    const int n = *h.states;
    const AcceptanceKind kind = *h.kind;
    if (*h.initial >= n) throw Error(ErrorKind::DanglingReference, "initial state " + std::to_string(*h.initial));

    PartialStructure partial(*h.alphabet, n, *h.initial);
    for (const auto& t : trans) {
        if (t.from >= n || t.to >= n)
            throw Error(ErrorKind::DanglingReference,
                        "line " + std::to_string(t.line) + ": state " + std::to_string(std::max(t.from, t.to)));
        Symbol a = h.alphabet->index(t.symbol);
        State old = partial.get(t.from, a);
        if (old != kNoState && old != t.to) fail(t.line, "second target for the same state and symbol");
        partial.set(t.from, a, t.to);
    }
    TransitionStructure s = sink ? complete_with_sink(partial) : TransitionStructure(partial);
    const bool sink_added = s.state_count() > n;

    auto require = [&](bool ok, const char* what) {
        if (!ok) fail(line, std::string("acceptance lines do not match type: ") + what);
    };
    auto to_set = [](const std::vector<State>& states) {
        Bitset b;
        for (State q : states) b.insert(q);
        return b;
    };
    switch (kind) {
        case AcceptanceKind::Buchi:
        case AcceptanceKind::CoBuchi: {
            require(colors.empty() && sets.empty() && tsets.empty(), "only 'acc states' allowed");
            Bitset f = acc_states ? to_set(*acc_states) : Bitset{};
            if (kind == AcceptanceKind::Buchi) return validate(s, Buchi{f});
            if (sink_added) f.insert(n);
            return validate(s, CoBuchi{f});
        }
        case AcceptanceKind::Parity: {
            require(!acc_states && sets.empty() && tsets.empty(), "only 'acc color' allowed");
            std::vector<int> kappa(static_cast<std::size_t>(s.state_count()), -1);
            for (const auto& [l, qc] : colors) {
                auto [q, c] = qc;
                if (q >= n) throw Error(ErrorKind::DanglingReference, "line " + std::to_string(l) + ": state " + std::to_string(q));
                if (kappa[q] >= 0) fail(l, "state colored twice");
                kappa[q] = c;
            }
            if (sink_added) kappa[n] = 0;
            for (State q = 0; q < s.state_count(); ++q)
                if (kappa[q] < 0) throw Error(ErrorKind::InvalidAcceptance, "state " + std::to_string(q) + " has no color");
            return validate(s, Parity{std::move(kappa)});
        }
        case AcceptanceKind::Muller: {
            require(!acc_states && colors.empty() && tsets.empty(), "only 'acc set' allowed");
            MullerStates m;
            for (const auto& set : sets) m.table.push_back(to_set(set));
            return validate(s, std::move(m));
        }
        case AcceptanceKind::TMuller: {
            require(!acc_states && colors.empty() && sets.empty(), "only 'acc tset' allowed");
            MullerTransitions m;
            for (const auto& [l, triples] : tsets) {
                Bitset ids;
                for (const auto& t : triples) {
                    State from = to_int(t[0], l, "state");
                    State to = to_int(t[2], l, "state");
                    if (from >= s.state_count() || to >= s.state_count())
                        throw Error(ErrorKind::DanglingReference, "line " + std::to_string(l) + ": transition state");
                    Symbol a = h.alphabet->index(t[1]);
                    if (s.next(from, a) != to)
                        throw Error(ErrorKind::DanglingReference,
                                    "line " + std::to_string(l) + ": transition (" + t[0] + "," + t[1] + "," + t[2] +
                                        ") does not exist");
                    ids.insert(s.transition_id(from, a));
                }
                m.table.push_back(std::move(ids));
            }
            return validate(s, std::move(m));
        }
    }
    fail(line, "unreachable acceptance type");
}

std::string print_oaf(const Acceptor& a) {
    const auto& s = a.structure();
    const auto& alpha = s.alphabet();
    std::ostringstream out;
    out << "oaf 1\n";
    out << "type " << to_string(a.kind()) << '\n';
    out << "alphabet";
    for (Symbol c = 0; c < alpha.size(); ++c) out << ' ' << alpha.name(c);
    out << '\n';
    out << "states " << s.state_count() << '\n';
    out << "initial " << s.initial() << '\n';
    for (State q = 0; q < s.state_count(); ++q)
        for (Symbol c = 0; c < alpha.size(); ++c) out << "trans " << q << ' ' << alpha.name(c) << ' ' << s.next(q, c) << '\n';
    auto states_line = [&](const char* head, const Bitset& b) {
        out << head;
        for (int q : b.members()) out << ' ' << q;
        out << '\n';
    };
    std::visit(
        [&](const auto& acc) {
            using T = std::decay_t<decltype(acc)>;
            if constexpr (std::is_same_v<T, Buchi> || std::is_same_v<T, CoBuchi>) {
                states_line("acc states", acc.accepting);
            } else if constexpr (std::is_same_v<T, Parity>) {
                for (State q = 0; q < s.state_count(); ++q) out << "acc color " << q << ' ' << acc.colors[q] << '\n';
            } else if constexpr (std::is_same_v<T, MullerStates>) {
                for (const auto& set : acc.table) states_line("acc set", set);
            } else {
                for (const auto& set : acc.table) {
                    out << "acc tset";
                    bool first = true;
                    for (int id : set.members()) {
                        auto t = s.transition(id);
                        out << (first ? " " : " ; ") << t.from << ' ' << alpha.name(t.symbol) << ' ' << t.to;
                        first = false;
                    }
                    out << '\n';
                }
            }
        },
        a.acceptance());
    return out.str();
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
    Word w;
    if (text.empty()) return w;
    if (text.find('.') != std::string_view::npos) {
        std::size_t start = 0;
        while (true) {
            std::size_t dot = text.find('.', start);
            auto part = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
            if (part.empty()) throw Error(ErrorKind::ParseError, "empty symbol in word '" + std::string(text) + "'");
            w.push_back(alphabet.index(part));
            if (dot == std::string_view::npos) break;
            start = dot + 1;
        }
        return w;
    }
    if (alphabet.single_char()) {
        for (char c : text) w.push_back(alphabet.index(std::string_view(&c, 1)));
        return w;
    }
    w.push_back(alphabet.index(text));
    return w;
}

LassoWord parse_lasso(const Alphabet& alphabet, std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorKind::ParseError, "lasso needs the form spoke:cycle");
    return {parse_word(alphabet, text.substr(0, colon)), parse_word(alphabet, text.substr(colon + 1))};
}

}  // namespace omega
