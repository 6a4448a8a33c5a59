// Command-line front end: OAF files in, key=value lines out.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "omega/congruence.hpp"
#include "omega/decisions.hpp"
#include "omega/lab.hpp"
#include "omega/loops.hpp"
#include "omega/oaf.hpp"
#include "omega/ops.hpp"

using namespace omega;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitCapacity = 4;

/// Bad command-line values detected after CLI11 has parsed them.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input that cannot be read as an acceptor or lasso.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Acceptor load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_oaf(text.str());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::CapacityExceeded) throw;
        throw InputError(path + ": " + e.what());
    }
}

/// Writes to `path`, or to stdout when it is empty or "-".
void store(const Acceptor& a, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << print_oaf(a);
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << print_oaf(a);
}

const char* flag(bool b) { return b ? "true" : "false"; }

/// The `acc` lines of an acceptance on the quotient, joined with " | ".
std::string render(const TransitionStructure& s, const Acceptance& acc) {
    std::istringstream text(print_oaf(validate(s, acc)));
    std::string line, out;
    while (std::getline(text, line)) {
        if (line.rfind("type ", 0) == 0) out = line.substr(5) + (out.empty() ? "" : " " + out);
        if (line.rfind("acc ", 0) != 0) continue;
        out += (out.empty() ? "" : " | ") + line.substr(4);
    }
    return out;
}

std::pair<int, int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    auto number = [&](std::string_view part) {
        int v = 0;
        auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || end != part.data() + part.size() || v < 1)
            throw UsageError("bad size range '" + text + "', expected A..B");
        return v;
    };
    if (dots == std::string::npos) {
        int v = number(text);
        return {v, v};
    }
    auto lo = number(std::string_view(text).substr(0, dots));
    auto hi = number(std::string_view(text).substr(dots + 2));
    if (lo > hi) throw UsageError("empty size range '" + text + "'");
    return {lo, hi};
}

/// Enumeration limits; a user-supplied cap replaces both defaults.
struct Limits {
    std::size_t loops = kDefaultLoopCapacity;
    std::size_t monoid = kDefaultMonoidCapacity;
};

void run_classify(const Acceptor& a, const Limits& limits) {
    auto c = classify(a, limits.loops);
    const auto& alpha = a.alphabet();
    auto respective = is_respective(a, c.quotient, limits.monoid);
    auto counting = is_non_counting(a, c.quotient, limits.monoid);
    std::cout << "index=" << c.index << "\ntrivial=" << flag(c.trivial) << "\nweak=" << flag(c.weak)
              << "\ndb=" << flag(c.db) << "\ndc=" << flag(c.dc);
    for (auto k : {InformativeClass::IT, InformativeClass::IM, InformativeClass::IP, InformativeClass::IB,
                   InformativeClass::IC})
        std::cout << '\n' << to_string(k) << '=' << flag(c.verdict(k).holds);
    std::cout << "\nrespective=" << flag(respective.respective) << "\nnoncounting=" << flag(counting.non_counting)
              << '\n';

    if (respective.x && respective.u)
        std::cout << "witness_respective=" << format_word(alpha, *respective.x) << ':'
                  << format_word(alpha, *respective.u) << '\n';
    if (counting.witness) {
        const auto& w = *counting.witness;
        std::cout << "witness_counting_u=" << format_word(alpha, w.u) << "\nwitness_counting_v="
                  << format_word(alpha, w.v) << "\nwitness_counting_w=" << format_lasso(alpha, w.w)
                  << "\nwitness_counting_n=" << w.n << '\n';
    }
    for (auto k : {InformativeClass::IT, InformativeClass::IM, InformativeClass::IP, InformativeClass::IB,
                   InformativeClass::IC}) {
        const auto& v = c.verdict(k);
        if (v.certificate)
            std::cout << "certificate_" << to_string(k) << '=' << render(c.quotient.structure, *v.certificate)
                      << '\n';
        if (!v.counterexample) continue;
        std::cout << "witness_" << to_string(k) << '=' << v.counterexample->reason;
        for (const auto& l : v.counterexample->lassos) std::cout << ' ' << format_lasso(alpha, l);
        std::cout << '\n';
    }
}

/// Strongest available acceptance on the quotient structure.
Acceptor quotient_acceptor(const Acceptor& a, const Limits& limits) {
    auto c = classify(a, limits.loops);
    for (auto k : {InformativeClass::IB, InformativeClass::IC, InformativeClass::IP, InformativeClass::IM,
                   InformativeClass::IT})
        if (const auto& v = c.verdict(k); v.holds && v.certificate)
            return validate(c.quotient.structure, *v.certificate);
    throw InputError("the language is not in IT: no acceptance on its rightcon automaton recognizes it");
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Deterministic omega-acceptors and their right congruences"};
    app.require_subcommand(1);
    std::string file, other, out, lasso_text, name, op_name, polarity_text, sizes = "5..10", mode = "exact";
    int n = 0, m = 0, states = 0, trials = 100, samples = 100000, alphabet_size = 3, sets = 2;
    std::uint64_t seed = 1;
    std::size_t capacity = 0;
    app.add_option("--capacity", capacity, "Cap on enumerated loops and monoid elements")
        ->check(CLI::PositiveNumber);

    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate an acceptor");
    validate_cmd->add_option("file", file)->required();

    auto* member = app.add_subcommand("member", "Membership of a lasso word spoke:cycle");
    member->add_option("file", file)->required();
    member->add_option("lasso", lasso_text)->required();

    auto* classify_cmd = app.add_subcommand("classify", "Index, loop shape, informative classes, decisions");
    classify_cmd->add_option("file", file)->required();

    auto* quotient = app.add_subcommand("quotient", "Write the rightcon automaton with its strongest acceptance");
    quotient->add_option("file", file)->required();
    quotient->add_option("-o,--output", out);

    auto* equiv = app.add_subcommand("equiv", "Language equivalence of two acceptors");
    equiv->add_option("first", file)->required();
    equiv->add_option("second", other)->required();

    auto* op = app.add_subcommand("op", "Boolean operations");
    op->add_option("operation", op_name)->required()->check(CLI::IsMember({"complement", "union", "intersect"}));
    op->add_option("first", file)->required();
    op->add_option("second", other);
    op->add_option("-o,--output", out);

    auto* alternation = app.add_subcommand("alternation", "Maximal alternation along loop chains");
    alternation->add_option("file", file)->required();

    auto* gen = app.add_subcommand("gen", "Generate acceptors");
    gen->require_subcommand(1);
    auto* wagner = gen->add_subcommand("wagner", "Wagner family member");
    wagner->add_option("n", n)->required()->check(CLI::NonNegativeNumber);
    wagner->add_option("m", m)->required()->check(CLI::NonNegativeNumber);
    wagner->add_option("polarity", polarity_text)->required();
    wagner->add_option("-o,--output", out);
    auto* random = gen->add_subcommand("random", "Seeded random state-Muller acceptor");
    random->add_option("--states", states)->required()->check(CLI::PositiveNumber);
    random->add_option("--seed", seed)->required();
    random->add_option("--alphabet", alphabet_size)->check(CLI::PositiveNumber);
    random->add_option("--sets", sets)->check(CLI::NonNegativeNumber);
    random->add_option("-o,--output", out);

    auto* fixture_cmd = app.add_subcommand("fixture", "Write a named fixture");
    fixture_cmd->add_option("name", name)->required();
    fixture_cmd->add_option("-o,--output", out);

    auto* experiment = app.add_subcommand("experiment", "How often random acceptors are minimal for their language");
    experiment->add_option("--sizes", sizes);
    experiment->add_option("--trials", trials)->check(CLI::PositiveNumber);
    experiment->add_option("--seed", seed);
    experiment->add_option("--mode", mode)->check(CLI::IsMember({"exact", "sample"}));
    experiment->add_option("--samples", samples)->check(CLI::PositiveNumber);
    experiment->add_option("--alphabet", alphabet_size)->check(CLI::PositiveNumber);
    experiment->add_option("--sets", sets)->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    Limits limits;
    if (capacity > 0) limits.loops = limits.monoid = capacity;

    if (*validate_cmd) {
        auto a = load(file);
        std::cout << "valid=true\ntype=" << to_string(a.kind()) << "\nstates=" << a.state_count()
                  << "\nalphabet=" << a.alphabet().size() << '\n';
    } else if (*member) {
        auto a = load(file);
        LassoWord w = [&] {
            try {
                return parse_lasso(a.alphabet(), lasso_text);
            } catch (const Error& e) {
                throw InputError(std::string("lasso: ") + e.what());
            }
        }();
        std::cout << "accepted=" << flag(accepts(a, w)) << '\n';
    } else if (*classify_cmd) {
        run_classify(load(file), limits);
    } else if (*quotient) {
        store(quotient_acceptor(load(file), limits), out);
    } else if (*equiv) {
        auto a = load(file);
        auto b = load(other);
        if (!(a.alphabet() == b.alphabet())) throw InputError("the two acceptors use different alphabets");
        auto r = equivalent(a, b, limits.loops);
        std::cout << "equivalent=" << flag(r.equivalent)
                  << "\nwitness=" << (r.witness ? format_lasso(a.alphabet(), *r.witness) : "") << '\n';
    } else if (*op) {
        auto a = load(file);
        if (op_name == "complement") {
            if (!other.empty()) throw UsageError("complement takes one acceptor");
            store(complement(a, limits.loops), out);
        } else {
            if (other.empty()) throw UsageError(op_name + " takes two acceptors");
            auto b = load(other);
            if (!(a.alphabet() == b.alphabet())) throw InputError("the two acceptors use different alphabets");
            store(combine(a, b, op_name == "union" ? BoolOp::Union : BoolOp::Intersection, limits.loops), out);
        }
    } else if (*alternation) {
        auto am = alternation_measure(load(file));
        std::cout << "alternations=" << am.max_alternations << "\npolarity=" << to_string(am.polarity) << '\n';
        std::cout << "witness_chain=";
        for (std::size_t i = 0; i < am.witness_chain.size(); ++i) {
            std::cout << (i ? " < " : "") << '{';
            auto members = am.witness_chain[i].states.members();
            for (std::size_t j = 0; j < members.size(); ++j) std::cout << (j ? "," : "") << members[j];
            std::cout << '}' << (am.witness_chain[i].accepting ? '+' : '-');
        }
        std::cout << '\n';
    } else if (*wagner) {
        auto p = parse_polarity(polarity_text);
        if (!p) throw UsageError("polarity must be +, - or both");
        store(wagner_family(n, m, *p), out);
    } else if (*random) {
        store(random_dma(states, seed, alphabet_size, sets), out);
    } else if (*fixture_cmd) {
        try {
            store(fixture(name), out);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::UnknownFixture) throw;
            throw UsageError(e.what());
        }
    } else if (*experiment) {
        ExperimentConfig cfg;
        auto [lo, hi] = parse_range(sizes);
        for (int s = lo; s <= hi; ++s) cfg.sizes.push_back(s);
        cfg.trials_per_size = trials;
        cfg.alphabet_size = alphabet_size;
        cfg.accepting_sets = sets;
        cfg.mode = mode == "exact" ? ExperimentMode::Exact : ExperimentMode::Sampled;
        cfg.samples = samples;
        cfg.seed = seed;
        std::cout << format_report(run_experiment(cfg));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::CapacityExceeded ? kExitCapacity : kExitInvalid;
    }
}
