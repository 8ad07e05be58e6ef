#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qballot/analysis.hpp"
#include "qballot/fastsim.hpp"
#include "qballot/gates.hpp"
#include "qballot/protocol.hpp"
#include "qballot/verify.hpp"

using nlohmann::json;
using namespace qballot;

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
// auto backend switches to the structured sampler above this state size
constexpr std::uint64_t kAutoDenseCap = std::uint64_t{1} << 20;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t pow_capped(std::uint64_t base, std::uint64_t exp,
                         std::uint64_t cap) {
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (total > cap / base) return cap + 1;
        total *= base;
    }
    return total;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    return cfg;
}

template <typename T>
T field(const json& cfg, const std::string& key) {
    if (!cfg.contains(key)) throw ConfigError("missing config field: " + key);
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config field has wrong type: " + key);
    }
}

template <typename T>
T field_or(const json& cfg, const std::string& key, T fallback) {
    if (!cfg.contains(key)) return fallback;
    return field<T>(cfg, key);
}

Version parse_version(const std::string& s) {
    if (s == "per-voter-fourier") return Version::PerVoterFourier;
    if (s == "pre-fourier") return Version::PreFourier;
    throw ConfigError("config field version must be per-voter-fourier or pre-fourier");
}

/// Explicit list, or {"random": {"p": .., "count": ..}} drawn from the seed.
std::vector<int> resolve_votes(const json& cfg, std::uint64_t seed) {
    if (!cfg.contains("votes")) throw ConfigError("missing config field: votes");
    const json& v = cfg.at("votes");
    if (v.is_array()) return v.get<std::vector<int>>();
    if (v.is_object() && v.contains("random")) {
        const json& r = v.at("random");
        const double p = field<double>(r, "p");
        const int count = field<int>(r, "count");
        if (p < 0.0 || p > 1.0) throw ConfigError("votes.random.p must be in [0,1]");
        SeededRng rng(SeededRng::derive(seed, 0x766f7465)); // dedicated vote stream
        std::vector<int> votes(static_cast<std::size_t>(count));
        for (int& a : votes) a = rng.uniform_unit() < p ? 1 : 0;
        return votes;
    }
    throw ConfigError("config field votes must be a list or {\"random\": {...}}");
}

void emit(std::ostream& out, const json& record) { out << record.dump() << "\n"; }

int run_simple(const json& cfg, std::ostream& out) {
    const int m = field<int>(cfg, "m");
    const int n = field<int>(cfg, "n");
    const std::uint64_t seed = field<std::uint64_t>(cfg, "seed");
    const int trials = field_or<int>(cfg, "trials", 1);
    const std::string version_name =
        field_or<std::string>(cfg, "version", "per-voter-fourier");
    const Version version = parse_version(version_name);
    std::string backend = field_or<std::string>(cfg, "backend", "auto");
    std::vector<int> votes = resolve_votes(cfg, seed);

    if (n < 2) throw ConfigError("constraint violated: n >= 2");
    if (m <= n) throw ConfigError("constraint violated: m > n");
    if (static_cast<int>(votes.size()) > n) {
        throw ConfigError("constraint violated: votes length <= n");
    }
    if (backend == "auto") {
        backend = pow_capped(static_cast<std::uint64_t>(m),
                             static_cast<std::uint64_t>(n),
                             kAutoDenseCap) <= kAutoDenseCap
                      ? "dense"
                      : "structured";
    }
    if (backend != "dense" && backend != "structured") {
        throw ConfigError("config field backend must be dense, structured or auto");
    }

    const int real_voters = static_cast<int>(votes.size());
    std::vector<int> padded = votes;
    padded.resize(static_cast<std::size_t>(n), 0);

    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed =
            SeededRng::derive(seed, static_cast<std::uint64_t>(t));
        TallyOutcome tally;
        if (backend == "dense") {
            tally = run_election({m, n, version, trial_seed},
                                 VoteVector{votes, 2}, real_voters);
        } else {
            const StructuredBallotState s{m, n, padded};
            SeededRng rng(trial_seed);
            sample_into(s, rng, tally.outcomes);
            long long sum = 0;
            for (int o : tally.outcomes) sum += o;
            tally.sum_mod_m = static_cast<int>(sum % m);
            tally.yes_count = tally.sum_mod_m;
            tally.fictional_votes = n - real_voters;
        }
        json rec{{"mode", "simple"},       {"m", m},
                 {"n", n},                 {"seed", seed},
                 {"trial", t},             {"backend", backend},
                 {"version", version_name}, {"sum_mod_m", tally.sum_mod_m},
                 {"yes_count", tally.yes_count},
                 {"fictional_votes", tally.fictional_votes}};
        if (n <= 64) rec["outcomes"] = tally.outcomes;
        emit(out, rec);
    }
    return 0;
}

int run_boxes(const json& cfg, std::ostream& out) {
    const int m = field<int>(cfg, "m");
    const std::uint64_t seed = field<std::uint64_t>(cfg, "seed");
    const int trials = field_or<int>(cfg, "trials", 1);
    const auto votes_per_box =
        field<std::vector<std::vector<int>>>(cfg, "votes_per_box");
    for (int t = 0; t < trials; ++t) {
        BoxElectionSpec spec{m, votes_per_box,
                             SeededRng::derive(seed, static_cast<std::uint64_t>(t))};
        const TallyOutcome tally = run_box_election(spec);
        emit(out, json{{"mode", "boxes"},
                       {"m", m},
                       {"n", votes_per_box.size()},
                       {"seed", seed},
                       {"trial", t},
                       {"backend", "dense"},
                       {"outcomes", tally.outcomes},
                       {"sum_mod_m", tally.sum_mod_m},
                       {"yes_count", tally.yes_count}});
    }
    return 0;
}

int run_multicandidate_mode(const json& cfg, std::ostream& out) {
    const int m = field<int>(cfg, "m");
    const std::uint64_t seed = field<std::uint64_t>(cfg, "seed");
    const std::vector<int> votes = resolve_votes(cfg, seed);
    const int n = static_cast<int>(votes.size());
    if (m <= 2 * n) throw ConfigError("constraint violated: m > 2n");
    const CandidateCounts c = run_multicandidate(m, n, VoteVector{votes, 3}, seed);
    emit(out, json{{"mode", "multicandidate"},
                   {"m", m},
                   {"n", n},
                   {"seed", seed},
                   {"backend", "dense"},
                   {"counts", {c.n_one, c.n_two, c.n_three}}});
    return 0;
}

int run_crt_mode(const json& cfg, std::ostream& out) {
    const auto moduli = field<std::vector<long long>>(cfg, "moduli");
    const std::uint64_t seed = field<std::uint64_t>(cfg, "seed");
    const std::vector<int> votes = resolve_votes(cfg, seed);
    const long long yes = run_crt_election(moduli, VoteVector{votes, 2}, seed);
    emit(out, json{{"mode", "crt"},
                   {"moduli", moduli},
                   {"n", votes.size()},
                   {"seed", seed},
                   {"yes_count", yes}});
    return 0;
}

int run_classical(const json& cfg, std::ostream& out) {
    const int m = field<int>(cfg, "m");
    const std::uint64_t seed = field<std::uint64_t>(cfg, "seed");
    const std::vector<int> votes = resolve_votes(cfg, seed);
    if (m <= static_cast<int>(votes.size())) {
        throw ConfigError("constraint violated: m > n");
    }
    SeededRng rng(seed);
    const ClassicalRun run = classical_baseline(VoteVector{votes, 2}, m, rng);
    emit(out, json{{"mode", "classical"},
                   {"m", m},
                   {"n", votes.size()},
                   {"seed", seed},
                   {"stored", run.stored},
                   {"yes_count", run.recovered_yes}});
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_path) {
    const json cfg = load_config(config_path);
    const std::string mode = field<std::string>(cfg, "mode");

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ConfigError("cannot open output file: " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : file;

    const auto start = std::chrono::steady_clock::now();
    int rc = 0;
    if (mode == "simple") {
        rc = run_simple(cfg, out);
    } else if (mode == "boxes") {
        rc = run_boxes(cfg, out);
    } else if (mode == "multicandidate") {
        rc = run_multicandidate_mode(cfg, out);
    } else if (mode == "crt") {
        rc = run_crt_mode(cfg, out);
    } else if (mode == "classical") {
        rc = run_classical(cfg, out);
    } else {
        throw ConfigError("config field mode must be one of "
                          "simple, boxes, multicandidate, crt, classical");
    }
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    // timing goes to stderr so result records stay byte-reproducible
    std::cerr << "wall_time_s " << elapsed << "\n";
    return rc;
}

int cmd_verify(const std::string& suite) {
    if (!suite.empty()) {
        const auto names = verify_suite_names();
        if (std::find(names.begin(), names.end(), suite) == names.end()) {
            std::cerr << "unknown suite: " << suite << "\n";
            return kExitUsage;
        }
    }
    int failures = 0;
    for (const SuiteResult& r : run_verify_suites(suite)) {
        std::cout << (r.failures == 0 ? "PASS" : "FAIL") << " " << r.name << " ("
                  << r.checks - r.failures << "/" << r.checks << " checks)\n";
        for (const auto& msg : r.messages) std::cout << "  " << msg << "\n";
        failures += r.failures;
    }
    return failures == 0 ? 0 : kExitVerifyFail;
}

int cmd_sample(int m, long long n, int trials, std::uint64_t seed, int yes,
               const std::string& out_path) {
    if (yes < 0 || yes > n) throw ConfigError("--yes must be in [0, n]");
    std::vector<int> shifts(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < yes; ++k) shifts[static_cast<std::size_t>(k)] = 1;
    const StructuredBallotState state{m, n, shifts};
    state.validate();

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ConfigError("cannot open output file: " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : file;

    SeededRng rng(seed);
    std::vector<int> sample;
    for (int t = 0; t < trials; ++t) {
        sample_into(state, rng, sample);
        long long sum = 0;
        for (int o : sample) sum += o;
        json rec{{"mode", "sample"}, {"m", m},
                 {"n", n},           {"seed", seed},
                 {"trial", t},       {"backend", "structured"},
                 {"sum_mod_m", sum % m}};
        if (n <= 64) rec["outcomes"] = sample;
        emit(out, rec);
    }
    return 0;
}

int cmd_gates(std::uint64_t m, std::uint64_t n) {
    const GateCountReport r = gate_counts(m, n);
    emit(std::cout, json{{"mode", "gates"},
                         {"m", m},
                         {"n", n},
                         {"k", r.k},
                         {"hadamard_gates", r.hadamard_gates},
                         {"copier_gates", r.copier_gates},
                         {"fourier_gates_per_register", r.fourier_gates_per_register},
                         {"increment_gates_per_vote", r.increment_gates_per_vote},
                         {"total", r.total}});
    return 0;
}

int cmd_crt_solve(const std::vector<long long>& moduli,
                  const std::vector<long long>& residues) {
    const long long x = crt_solve({moduli, residues});
    emit(std::cout, json{{"mode", "crt-solve"},
                         {"moduli", moduli},
                         {"residues", residues},
                         {"solution", x}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum secret-ballot protocol simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    auto* run = app.add_subcommand("run", "Run elections from a config file");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--out", out_path, "Write records to a file instead of stdout");

    std::string suite;
    auto* verify = app.add_subcommand("verify", "Run the verification suites");
    verify->add_option("--suite", suite, "Run a single suite");

    int sample_m = 0;
    long long sample_n = 0;
    int sample_trials = 1;
    std::uint64_t sample_seed = 0;
    int sample_yes = 0;
    std::string sample_out;
    auto* sample = app.add_subcommand("sample", "Sample the structured post-vote state");
    sample->add_option("--m", sample_m, "Modulus")->required();
    sample->add_option("--n", sample_n, "Register count")->required();
    sample->add_option("--trials", sample_trials, "Number of samples");
    sample->add_option("--seed", sample_seed, "RNG seed");
    sample->add_option("--yes", sample_yes, "Number of YES votes (first registers)");
    sample->add_option("--out", sample_out, "Output file");

    std::uint64_t gates_m = 0;
    std::uint64_t gates_n = 0;
    auto* gates = app.add_subcommand("gates", "Gate-count report, m = 2^k");
    gates->add_option("--m", gates_m, "Modulus (power of two)")->required();
    gates->add_option("--n", gates_n, "Voter count")->required();

    std::vector<long long> moduli;
    std::vector<long long> residues;
    auto* crt = app.add_subcommand("crt-solve", "Solve a congruence system");
    crt->add_option("--moduli", moduli, "Pairwise coprime moduli")->required();
    crt->add_option("--residues", residues, "Residues, one per modulus")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_path);
        if (verify->parsed()) return cmd_verify(suite);
        if (sample->parsed()) {
            return cmd_sample(sample_m, sample_n, sample_trials, sample_seed,
                              sample_yes, sample_out);
        }
        if (gates->parsed()) return cmd_gates(gates_m, gates_n);
        if (crt->parsed()) return cmd_crt_solve(moduli, residues);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
