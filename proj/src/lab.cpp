#include "omega/lab.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "omega/congruence.hpp"
#include "omega/graph.hpp"

namespace omega {

namespace {

/// Builds a structure from "q:syms>t" tokens, each character of `syms`
/// being a single-character symbol. Missing transitions go to a fresh sink.
TransitionStructure build(std::vector<std::string> symbols, int states, State initial, std::string_view edges) {
    Alphabet alpha(std::move(symbols));
    PartialStructure partial(alpha, states, initial);
    std::istringstream in{std::string(edges)};
    std::string token;
    while (in >> token) {
        auto colon = token.find(':');
        auto arrow = token.find('>');
        State from = std::stoi(token.substr(0, colon));
        State to = std::stoi(token.substr(arrow + 1));
        for (char c : token.substr(colon + 1, arrow - colon - 1)) partial.set(from, alpha.index(std::string(1, c)), to);
    }
    return complete_with_sink(partial);
}

Bitset set_of(std::initializer_list<int> states) {
    Bitset b;
    for (int q : states) b.insert(q);
    return b;
}

const std::vector<std::string> kAbc{"a", "b", "c"};
const std::vector<std::string> kAb{"a", "b"};

// B: epsilon=0, a=1, ab=2 (initial).
Acceptor fig2_b() {
    return validate(build(kAbc, 3, 2, "0:a>1 0:bc>0 1:ac>1 1:b>2 2:abc>0"), Buchi{set_of({2})});
}
Acceptor fig2_c() { return validate(build(kAb, 2, 0, "0:a>0 0:b>1 1:b>1 1:a>0"), CoBuchi{set_of({0})}); }
Acceptor fig2_m() {
    return validate(build(kAb, 2, 0, "0:b>0 0:a>1 1:b>1 1:a>0"), MullerStates{{set_of({0}), set_of({1})}});
}
Acceptor fig2_p() {
    return validate(build(kAb, 4, 0, "0:a>0 0:b>1 1:a>0 1:b>2 2:a>0 2:b>3 3:ab>3"), Parity{{2, 1, 0, 0}});
}
Acceptor fig2_t() {
    auto s = build(kAb, 1, 0, "0:ab>0");
    return validate(s, MullerTransitions{{set_of({s.transition_id(0, 0)})}});
}

// M/P over {0,1}: lambda=0, "0"=1, "1"=2.
TransitionStructure fig3_mp_structure() {
    return build({"0", "1"}, 3, 0, "0:0>1 0:1>2 1:01>0 2:0>2 2:1>0");
}
Acceptor fig3_m() { return validate(fig3_mp_structure(), MullerStates{{set_of({0, 2})}}); }
Acceptor fig3_p() { return validate(fig3_mp_structure(), Parity{{1, 0, 2}}); }

TransitionStructure fig3_bc_structure() {
    return build(kAbc, 4, 0, "0:abc>1 1:a>2 1:bc>1 2:a>2 2:b>3 2:c>1 3:a>1 3:b>3 3:c>0");
}
Acceptor fig3_b() { return validate(fig3_bc_structure(), Buchi{set_of({0})}); }
Acceptor fig3_c() { return validate(fig3_bc_structure(), CoBuchi{set_of({0})}); }
Acceptor fig3_mprime() {
    return validate(build(kAbc, 3, 0, "0:a>0 0:b>1 0:c>2 1:b>1 1:c>0 1:a>2 2:abc>2"),
                    MullerStates{{set_of({0}), set_of({1})}});
}
Acceptor fig3_t() {
    auto s = build(kAb, 1, 0, "0:ab>0");
    return validate(s, MullerTransitions{{set_of({s.transition_id(0, 0)}), set_of({s.transition_id(0, 1)})}});
}

// Bad acceptors: lambda=0, then states "0", "1", ... in order.
Acceptor fig5_bbad() {
    return validate(build({"0", "1", "2"}, 4, 0, "0:0>1 0:1>2 0:2>3 1:012>1 2:02>2 2:1>0 3:01>3 3:2>0"),
                    Buchi{set_of({0})});
}
Acceptor fig5_cbad() {
    return validate(build({"0", "1", "2", "3"}, 5, 0,
                          "0:0>1 0:1>2 0:2>3 0:3>0 1:0123>1 2:02>2 2:1>0 2:3>4 3:013>3 3:2>0 4:012>4 4:3>2"),
                    CoBuchi{set_of({1, 4})});
}
Acceptor fig5_dbad() {
    return validate(build({"0", "1", "2", "3", "4"}, 6, 0,
                          "0:0>1 0:1>2 0:2>3 0:34>0 1:01234>1 2:02>2 2:1>0 2:3>4 2:4>5 "
                          "3:013>3 3:2>0 3:4>1 4:0123>4 4:4>5 5:01234>5"),
                    Buchi{set_of({0, 2, 3, 5})});
}

Acceptor fig6_b1() { return validate(build(kAb, 3, 0, "0:a>1 0:b>2 1:a>1 1:b>0 2:a>0 2:b>2"), Buchi{set_of({2})}); }
Acceptor fig6_b2() { return validate(build(kAb, 3, 0, "0:b>0 0:a>2 2:b>2 2:a>1 1:a>1 1:b>0"), Buchi{set_of({2})}); }
Acceptor fig6_bc() { return validate(build(kAb, 3, 0, "0:a>1 0:b>2 1:a>0 2:b>0"), Buchi{set_of({2})}); }
Acceptor fig6_p() {
    return validate(build(kAbc, 4, 0, "0:ac>0 0:b>1 1:bc>0 1:a>2 2:a>3 3:c>2"), Buchi{set_of({2, 3})});
}

TransitionStructure fig7_structure() { return build(kAbc, 2, 0, "0:bc>0 0:a>1 1:ac>1 1:b>0"); }
Acceptor fig7_bowtie() {
    return validate(build(kAb, 5, 0, "0:a>1 0:b>3 1:b>2 2:a>0 3:a>4 4:b>0"), Buchi{set_of({0})});
}

// Language fixtures over {a,b}.
Acceptor lang_l1() {
    return validate(build(kAb, 5, 0, "0:a>1 0:b>2 1:a>1 1:b>4 2:b>2 2:a>3 3:a>3 3:b>4 4:a>3 4:b>4"),
                    MullerStates{{set_of({3}), set_of({4})}});
}
Acceptor lang_l2() {
    return validate(build(kAb, 2, 0, "0:a>0 0:b>1 1:a>0 1:b>1"), MullerStates{{set_of({0}), set_of({1})}});
}
Acceptor lang_aab() { return validate(build(kAb, 3, 0, "0:a>1 0:b>2 1:a>0 2:b>2"), Buchi{set_of({2})}); }
Acceptor lang_fgaxa() {
    return validate(build(kAb, 3, 0, "0:a>0 0:b>1 1:a>0 1:b>2 2:a>0 2:b>2"), CoBuchi{set_of({2})});
}

using Builder = std::function<Acceptor()>;

const std::vector<std::pair<std::string, Builder>>& catalog() {
    static const std::vector<std::pair<std::string, Builder>> entries{
        {"fig2_B", fig2_b},
        {"fig2_C", fig2_c},
        {"fig2_M", fig2_m},
        {"fig2_P", fig2_p},
        {"fig2_T", fig2_t},
        {"fig3_M", fig3_m},
        {"fig3_P", fig3_p},
        {"fig3_B", fig3_b},
        {"fig3_C", fig3_c},
        {"fig3_Mprime", fig3_mprime},
        {"fig3_T", fig3_t},
        {"fig5_Bbad", fig5_bbad},
        {"fig5_Cbad", fig5_cbad},
        {"fig5_Dbad", fig5_dbad},
        {"fig6_B1", fig6_b1},
        {"fig6_B2", fig6_b2},
        {"fig6_BC", fig6_bc},
        {"fig6_P", fig6_p},
        {"fig7_M1", [] { return validate(fig7_structure(), MullerStates{{set_of({0})}}); }},
        {"fig7_M2", [] { return validate(fig7_structure(), MullerStates{{set_of({1})}}); }},
        {"fig7_M3", [] { return validate(fig7_structure(), MullerStates{{set_of({0}), set_of({1})}}); }},
        {"fig7_P1", [] { return validate(fig7_structure(), Parity{{1, 2}}); }},
        {"fig7_P2", [] { return validate(fig7_structure(), Parity{{2, 1}}); }},
        {"fig7_C1", [] { return validate(fig7_structure(), CoBuchi{set_of({1})}); }},
        {"fig7_C2", [] { return validate(fig7_structure(), CoBuchi{set_of({0})}); }},
        {"fig7_bowtie", fig7_bowtie},
        {"L1", lang_l1},
        {"L2", lang_l2},
        {"aab", lang_aab},
        {"fgaxa", lang_fgaxa},
    };
    return entries;
}

}  // namespace

Acceptor fixture(std::string_view name) {
    for (const auto& [key, make] : catalog())
        if (key == name) return make();
    throw Error(ErrorKind::UnknownFixture, "unknown fixture '" + std::string(name) + "'");
}

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& entry : catalog()) out.push_back(entry.first);
        return out;
    }();
    return names;
}

namespace {

/// One signed copy of the family starting at state id `offset`. The last
/// state of the last row leaves room for a full-row loop whenever that is
/// needed to keep states apart and the row chain complete.
void wagner_copy(PartialStructure& s, std::vector<Bitset>& table, int n, int m, bool plus, int offset) {
    auto id = [&](int k, int l) { return offset + l * (n + 1) + k; };
    for (int l = 0; l <= m; ++l)
        for (int k = 0; k <= n; ++k) {
            if (k == n && l == m) {
                const State last = id(k, l);
                if (n == 0 || (n == 1 && m % 2 == 1)) {
                    s.set(last, 0, last);
                    s.set(last, 1, last);
                } else if (n == 1) {
                    s.set(last, 0, last);
                    s.set(last, 1, id(0, l));
                } else {
                    s.set(last, 0, id(n - 1, l));
                    s.set(last, 1, last);
                }
                continue;
            }
            s.set(id(k, l), 0, id(0, l));
            s.set(id(k, l), 1, k < n ? id(k + 1, l) : id(0, l + 1));
        }
    for (int l = 0; l <= m; ++l)
        for (int j = 0; j <= n; ++j) {
            if ((j % 2 == 1) != ((l % 2 == 1) == plus)) continue;
            Bitset row;
            for (int k = 0; k <= j; ++k) row.insert(id(k, l));
            table.push_back(row);
        }
}

/// Loops through the last state take the verdict of the full last row.
void wagner_last_loops(const TransitionStructure& s, std::vector<Bitset>& table, int n, int m, bool plus, int offset) {
    if ((n % 2 == 1) != ((m % 2 == 1) == plus)) return;
    const State last = offset + m * (n + 1) + n;
    std::set<Bitset> present(table.begin(), table.end());
    for (const auto& loop : enumerate_state_loops(s))
        if (loop.contains(last) && present.insert(loop).second) table.push_back(loop);
}

}  // namespace

Acceptor wagner_family(int n, int m, Polarity polarity) {
    if (n < 0 || m < 0) throw Error(ErrorKind::InvalidAcceptance, "wagner family needs n, m >= 0");
    const int block = (n + 1) * (m + 1);
    Alphabet alpha(kAb);
    std::vector<Bitset> table;
    if (polarity != Polarity::Both) {
        const bool plus = polarity == Polarity::Plus;
        PartialStructure s(alpha, block, 0);
        wagner_copy(s, table, n, m, plus, 0);
        TransitionStructure ts(s);
        wagner_last_loops(ts, table, n, m, plus, 0);
        return validate(ts, MullerStates{std::move(table)});
    }
    PartialStructure s(alpha, 2 * block + 1, 2 * block);
    wagner_copy(s, table, n, m, true, 0);
    wagner_copy(s, table, n, m, false, block);
    s.set(2 * block, 0, 0);
    s.set(2 * block, 1, block);
    TransitionStructure ts(s);
    wagner_last_loops(ts, table, n, m, true, 0);
    wagner_last_loops(ts, table, n, m, false, block);
    return validate(ts, MullerStates{std::move(table)});
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    auto splitmix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

Acceptor random_dma(int states, std::uint64_t seed, int alphabet_size, int accepting_sets) {
    if (states < 1) throw Error(ErrorKind::InvalidAcceptance, "random acceptor needs at least one state");
    if (alphabet_size < 1 || alphabet_size > 26) throw Error(ErrorKind::InvalidAlphabet, "alphabet size must be 1..26");
    std::vector<std::string> symbols;
    for (int i = 0; i < alphabet_size; ++i) symbols.emplace_back(1, static_cast<char>('a' + i));
    Alphabet alpha(symbols);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> target(0, states - 1);

    std::optional<TransitionStructure> s;
    for (int attempt = 0; attempt < kSamplingRetries && !s; ++attempt) {
        PartialStructure partial(alpha, states, 0);
        for (State q = 0; q < states; ++q)
            for (Symbol a = 0; a < alphabet_size; ++a) partial.set(q, a, target(rng));
        TransitionStructure candidate(partial);
        if (candidate.reachable().size() == states) s = std::move(candidate);
    }
    if (!s) throw Error(ErrorKind::SamplingExhausted, "no structure with all states reachable");

    // Tiny structures may have fewer loopable sets than requested.
    const int available = static_cast<int>(enumerate_state_loops(*s).size());
    const int wanted = std::min(accepting_sets, available);
    std::bernoulli_distribution coin(0.5);
    std::set<Bitset> chosen;
    int attempts = 0;
    while (static_cast<int>(chosen.size()) < wanted) {
        if (++attempts > kSamplingRetries) throw Error(ErrorKind::SamplingExhausted, "no strongly connected subset found");
        Bitset candidate;
        for (State q = 0; q < states; ++q)
            if (coin(rng)) candidate.insert(q);
        if (candidate.empty() || chosen.contains(candidate)) continue;
        auto sccs = nontrivial_sccs(*s, candidate);
        if (sccs.size() == 1 && sccs.front() == candidate) chosen.insert(candidate);
    }
    return validate(*s, MullerStates{std::vector<Bitset>(chosen.begin(), chosen.end())});
}

LassoWord random_lasso(std::mt19937_64& rng, int states, int alphabet_size) {
    const int cap = 2 * states;
    std::bernoulli_distribution stop(0.5);
    std::uniform_int_distribution<int> symbol(0, alphabet_size - 1);
    std::uniform_int_distribution<int> cycle_length(1, cap);
    int spoke_length = 0;
    while (spoke_length < cap && !stop(rng)) ++spoke_length;
    Word spoke(static_cast<std::size_t>(spoke_length));
    for (auto& a : spoke) a = symbol(rng);
    Word cycle(static_cast<std::size_t>(cycle_length(rng)));
    for (auto& a : cycle) a = symbol(rng);
    return {std::move(spoke), std::move(cycle)};
}

namespace {

/// True if `samples` random lassos split the states into singletons.
bool separated_by_sampling(const Acceptor& a, int samples, std::mt19937_64& rng) {
    const int n = a.state_count();
    std::vector<int> block(static_cast<std::size_t>(n), 0);
    int blocks = 1;
    for (int i = 0; i < samples && blocks < n; ++i) {
        LassoWord w = random_lasso(rng, n, a.alphabet().size());
        std::vector<int> size(static_cast<std::size_t>(blocks), 0);
        for (int b : block) ++size[b];
        std::map<std::pair<int, bool>, int> split;
        std::vector<int> next(static_cast<std::size_t>(n));
        for (State q = 0; q < n; ++q) {
            bool verdict = size[block[q]] > 1 && accepts_from(a, q, w);
            next[q] = split.emplace(std::make_pair(block[q], verdict), static_cast<int>(split.size())).first->second;
        }
        block = std::move(next);
        blocks = static_cast<int>(split.size());
    }
    return blocks == n;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.sizes.empty()) throw Error(ErrorKind::InvalidAcceptance, "experiment needs at least one size");
    ExperimentReport report;
    report.mode = cfg.mode;
    report.seed = cfg.seed;
    for (int n : cfg.sizes) {
        ExperimentRow row;
        row.size = n;
        row.trials = cfg.trials_per_size;
        for (int t = 0; t < cfg.trials_per_size; ++t) {
            std::uint64_t trial_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t));
            Acceptor a = random_dma(n, trial_seed, cfg.alphabet_size, cfg.accepting_sets);
            bool iso = false;
            try {
                if (cfg.mode == ExperimentMode::Exact) {
                    iso = index(a) == n;
                } else {
                    std::mt19937_64 rng(derive_seed(trial_seed, 0x5a4d));
                    iso = separated_by_sampling(a, cfg.samples, rng);
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::CapacityExceeded) throw;
                ++row.capacity_exceeded;
                continue;
            }
            if (iso) ++row.isomorphic;
            else ++row.not_isomorphic;
        }
        report.rows.push_back(row);
    }
    return report;
}

std::string format_report(const ExperimentReport& report) {
    std::ostringstream out;
    out << "mode=" << (report.mode == ExperimentMode::Exact ? "exact" : "sample") << '\n';
    out << "seed=" << report.seed << '\n';
    for (const auto& row : report.rows) {
        out << "size=" << row.size << " trials=" << row.trials << " isomorphic=" << row.isomorphic
            << " not_isomorphic=" << row.not_isomorphic;
        if (row.capacity_exceeded > 0) out << " capacity_exceeded=" << row.capacity_exceeded;
        out << '\n';
    }
    return out.str();
}

}  // namespace omega
