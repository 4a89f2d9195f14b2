// End-to-end acceptance run: exercises the seven protocol-level guarantees
// (completeness, soundness, unit soundness, zero-knowledge, cost budgets,
// restoration, determinism) and prints exactly one PASS/FAIL line for each.
// Exit status is 0 iff every criterion holds. All tolerances and seeds are
// pinned here so the run is reproducible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "cardzk/harness.hpp"
#include "cardzk/primitives.hpp"
#include "cardzk/transcript_io.hpp"
#include "fixtures.hpp"

using namespace cardzk;

namespace {

bool all_pass = true;

void report(int index, const char* title, bool ok, const std::string& detail) {
    std::printf("%s  criterion %d  %-14s %s\n", ok ? "PASS" : "FAIL", index,
                title, detail.c_str());
    if (!ok) all_pass = false;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

// --- 1. Completeness: the reference instances always accept. ----------------
void criterion_completeness() {
    const auto start = std::chrono::steady_clock::now();
    TrialReport abc = completeness_sweep(
        make_abc_instance(fixtures::abc_reference_puzzle(),
                          fixtures::abc_reference_solution()),
        1000, 2101);
    TrialReport goishi = completeness_sweep(
        make_goishi_instance(fixtures::goishi_reference_puzzle(),
                             fixtures::goishi_reference_solution()),
        1000, 2102);
    const double secs = seconds_since(start);

    std::ostringstream d;
    d << "grid " << abc.accepts << "/1000 accepts, stones " << goishi.accepts
      << "/1000 accepts, " << std::fixed << secs << "s (limit 10s)";
    report(1, "completeness",
           abc.runs == 1000 && abc.accepts == 1000 && goishi.runs == 1000 &&
               goishi.accepts == 1000 && secs < 10.0,
           d.str());
}

// --- 2. Soundness: prover and oracle validator agree on every candidate. ----
void criterion_soundness() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream d;
    try {
        struct AbcCase {
            AbcPuzzle puzzle;
            std::uint64_t grids;
            std::uint64_t accepts;
        };
        const std::vector<AbcCase> abc_cases = {
            {{2, 1, {0, 0}, {0, 0}, {0, 0}, {0, 0}}, 16, 2},
            {{2, 1, {1, 0}, {0, 1}, {1, 0}, {0, 1}}, 16, 2},
            {{2, 2, {0, 0}, {0, 0}, {0, 0}, {0, 0}}, 81, 2},
            {{2, 2, {1, 2}, {2, 1}, {1, 2}, {2, 1}}, 81, 1},
        };
        std::uint64_t abc_runs = 0;
        for (std::size_t i = 0; i < abc_cases.size(); ++i) {
            TrialReport r = soundness_exhaustive(abc_cases[i].puzzle, 2110 + i);
            abc_runs += r.runs;
            if (r.runs != abc_cases[i].grids || r.accepts != abc_cases[i].accepts) {
                ok = false;
                d << "grid case " << i << " ran " << r.runs << " accepted "
                  << r.accepts << "; ";
            }
        }

        struct GoishiCase {
            GoishiPuzzle puzzle;
            // Hand-counted valid pick orders; -1 defers to the solver count.
            std::int64_t accepts;
        };
        const std::vector<GoishiCase> goishi_cases = {
            {{3, {{0, 0}, {0, 1}, {0, 2}}}, 2},
            {{3, {{0, 0}, {0, 2}, {2, 2}}}, 2},
            {{2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}}, 8},
            {{3, {{0, 0}, {0, 2}, {1, 1}, {2, 2}}}, -1},
        };
        std::uint64_t goishi_runs = 0;
        for (std::size_t i = 0; i < goishi_cases.size(); ++i) {
            TrialReport r = soundness_exhaustive(goishi_cases[i].puzzle, 2120 + i);
            goishi_runs += r.runs;
            const std::uint64_t want =
                goishi_cases[i].accepts >= 0
                    ? static_cast<std::uint64_t>(goishi_cases[i].accepts)
                    : solve_goishi(goishi_cases[i].puzzle).size();
            if (r.accepts != want) {
                ok = false;
                d << "stone case " << i << " accepted " << r.accepts
                  << " expected " << want << "; ";
            }
        }

        const double secs = seconds_since(start);
        d << "grids " << abc_runs << " + orderings " << goishi_runs
          << ", zero disagreements, " << std::fixed << secs << "s (limit 60s)";
        if (secs >= 60.0) ok = false;
    } catch (const std::logic_error& e) {
        ok = false;
        d << "disagreement: " << e.what();
    }
    report(2, "soundness", ok, d.str());
}

// --- 3. First-nonzero unit soundness, exhaustive. ---------------------------
void criterion_fnz_exhaustive() {
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t runs = 0;
    std::uint64_t mismatches = 0;
    for (int len = 1; len <= 6; ++len) {
        std::uint64_t count = 1;
        for (int i = 0; i < len; ++i) count *= 3;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<int> values(len);
            std::uint64_t rest = code;
            for (int i = 0; i < len; ++i) {
                values[i] = static_cast<int>(rest % 3);
                rest /= 3;
            }
            int truth = -1;
            for (int i = 0; i < len; ++i)
                if (values[i] != 0) {
                    truth = i;
                    break;
                }
            for (int claim = 0; claim < len; ++claim) {
                ProtocolInstance inst = make_fnz_instance(values, claim);
                ProtocolResult r = inst.run(derive_seed(2130, runs));
                ++runs;
                if (r.accepted != (claim == truth)) ++mismatches;
            }
        }
    }
    const double secs = seconds_since(start);
    std::ostringstream d;
    d << runs << " claim checks, " << mismatches << " mismatches, " << std::fixed
      << secs << "s (limit 5s)";
    report(3, "unit soundness", mismatches == 0 && secs < 5.0 && runs == 6015,
           d.str());
}

// --- 4. Zero-knowledge: marker uniformity + witness equivalence. ------------
void criterion_zero_knowledge() {
    bool ok = true;
    std::ostringstream d;

    // Marker positions uniform per cut site, overall significance 0.01.
    ZkAuditReport grid_uniform = zk_uniformity_audit(
        make_abc_instance(fixtures::abc_reference_puzzle(),
                          fixtures::abc_reference_solution()),
        10000, 2141);
    const GoishiPuzzle two_stones{2, {{0, 0}, {0, 1}}};
    const GoishiSolution east{{{0, 0}, {0, 1}}};
    const GoishiSolution west{{{0, 1}, {0, 0}}};
    ZkAuditReport stone_uniform =
        zk_uniformity_audit(make_goishi_instance(two_stones, east), 10000, 2142);
    if (!grid_uniform.pass || !stone_uniform.pass) ok = false;

    // Transcript distributions match across distinct witnesses (TV < 0.05).
    const AbcPuzzle open3{3, 1, {1, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    const AbcSolution diag{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    const AbcSolution rolled{{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}};
    ZkAuditReport grid_tv = zk_witness_equivalence(open3, diag, rolled, 10000, 2143);
    ZkAuditReport stone_tv =
        zk_witness_equivalence(two_stones, east, west, 10000, 2144);
    if (!grid_tv.pass || grid_tv.tv_distance >= 0.05) ok = false;
    if (!stone_tv.pass || stone_tv.tv_distance >= 0.05) ok = false;

    // Negative control: a constant-offset shuffle double must fail both.
    ZkAuditReport rigged_uniform =
        zk_uniformity_audit(make_rigged_fnz_instance({0, 1, 0}, 1), 10000, 2145);
    ProtocolInstance biased_a = make_abc_instance(open3, diag);
    ProtocolInstance biased_b = make_abc_instance(open3, rolled);
    biased_a.run = [open3, diag](std::uint64_t) {
        ConstantRng rng(0);
        return prove_abc(open3, diag, rng);
    };
    biased_b.run = [open3, rolled](std::uint64_t) {
        ConstantRng rng(0);
        return prove_abc(open3, rolled, rng);
    };
    ZkAuditReport rigged_tv = zk_witness_equivalence(biased_a, biased_b, 100, 2146);
    if (rigged_uniform.pass) ok = false;
    if (rigged_tv.pass || rigged_tv.tv_distance < 0.05) ok = false;

    d << "uniformity " << (grid_uniform.pass ? "pass" : "FAIL") << "/"
      << (stone_uniform.pass ? "pass" : "FAIL") << " @10000, tv "
      << grid_tv.tv_distance << "/" << stone_tv.tv_distance
      << " (<0.05), rigged double "
      << (!rigged_uniform.pass && !rigged_tv.pass ? "fails both" : "NOT CAUGHT");
    report(4, "zero-knowledge", ok, d.str());
}

// --- 5. Cost budgets: exact shuffle/card counts, linear in stone count. -----
void criterion_costs() {
    bool ok = true;
    std::ostringstream d;
    try {
        CostAudit fnz = cost_audit(make_fnz_instance({0, 0, 2, 1, 0}, 2), 2151);
        CostAudit abc = cost_audit(make_abc_instance(fixtures::abc_reference_puzzle(),
                                                     fixtures::abc_reference_solution()),
                                   2152);
        CostAudit goishi =
            cost_audit(make_goishi_instance(fixtures::goishi_reference_puzzle(),
                                            fixtures::goishi_reference_solution()),
                       2153);
        if (fnz.shuffles != 2 || abc.shuffles != 36 || abc.grid_cards != 25 ||
            goishi.shuffles != 68)
            ok = false;

        // Shuffle count against stone count m: prefixes of the reference pick
        // order stay valid solutions of the puzzle restricted to their own
        // stones (dropping later-picked stones never adds a blocker), giving
        // twelve honest runs for the regression. Expect exactly 2 + 6(m-1).
        const GoishiSolution full = fixtures::goishi_reference_solution();
        double sum_m = 0, sum_s = 0, sum_mm = 0, sum_ms = 0;
        bool exact = true;
        for (int m = 1; m <= 12; ++m) {
            GoishiPuzzle prefix{6, {}};
            GoishiSolution witness;
            for (int i = 0; i < m; ++i) {
                prefix.stones.push_back(full.picks[i]);
                witness.picks.push_back(full.picks[i]);
            }
            SeededRng rng(derive_seed(2154, m));
            ProtocolResult r = prove_goishi(prefix, witness, rng);
            const int shuffles = r.transcript.shuffle_count();
            if (!r.accepted || shuffles != 2 + 6 * (m - 1)) exact = false;
            sum_m += m;
            sum_s += shuffles;
            sum_mm += static_cast<double>(m) * m;
            sum_ms += static_cast<double>(m) * shuffles;
        }
        const double slope =
            (12 * sum_ms - sum_m * sum_s) / (12 * sum_mm - sum_m * sum_m);
        const double intercept = (sum_s - slope * sum_m) / 12;
        if (!exact || std::fabs(slope - 6.0) > 1e-9 ||
            std::fabs(intercept + 4.0) > 1e-9)
            ok = false;

        d << "fnz " << fnz.shuffles << " shuffles, grid " << abc.shuffles
          << " shuffles/" << abc.grid_cards << " cards, stones " << goishi.shuffles
          << " shuffles, fit 2+6(m-1) slope " << slope << " intercept "
          << intercept;
    } catch (const std::logic_error& e) {
        ok = false;
        d << "cost deviation: " << e.what();
    }
    report(5, "cost budgets", ok, d.str());
}

// --- 6. Restoration: accepting runs put every card id back in place. --------
void criterion_restoration() {
    std::uint64_t restored = 0;
    const std::uint64_t total = 1000;

    // 400 first-nonzero runs over random sequences with a true claim.
    for (std::uint64_t t = 0; t < 400; ++t) {
        SeededRng gen(derive_seed(2161, t));
        const int len = 3 + static_cast<int>(gen.next_below(5));
        std::vector<int> values(len);
        int truth = -1;
        while (truth < 0) {
            for (int i = 0; i < len; ++i)
                values[i] = static_cast<int>(gen.next_below(4));
            for (int i = 0; i < len; ++i)
                if (values[i] != 0) {
                    truth = i;
                    break;
                }
        }
        Engine engine(3);
        std::vector<Card> sequence;
        std::vector<std::uint64_t> ids;
        for (int v : values) {
            sequence.push_back(engine.make_card(v));
            ids.push_back(sequence.back().id);
        }
        SeededRng rng(derive_seed(2162, t));
        FnzResult r = first_non_zero(engine, sequence, truth, {}, rng);
        bool same = r.accepted && r.sequence.size() == ids.size();
        for (std::size_t i = 0; same && i < ids.size(); ++i)
            if (r.sequence[i].id != ids[i]) same = false;
        if (same) ++restored;
    }

    // 300 multiset verifications over random value vectors.
    for (std::uint64_t t = 0; t < 300; ++t) {
        SeededRng gen(derive_seed(2163, t));
        const int len = 2 + static_cast<int>(gen.next_below(5));
        std::vector<int> values(len);
        for (int i = 0; i < len; ++i)
            values[i] = static_cast<int>(gen.next_below(3));
        // The index row pairs cards 1..len with the sequence, so the engine
        // alphabet must reach len.
        Engine engine(std::max(len, 2));
        std::vector<Card> sequence;
        std::vector<std::uint64_t> ids;
        for (int v : values) {
            sequence.push_back(engine.make_card(v));
            ids.push_back(sequence.back().id);
        }
        std::vector<int> required = values;
        std::sort(required.begin(), required.end());
        SeededRng rng(derive_seed(2164, t));
        MultisetResult r = verify_multiset(engine, sequence, required, rng);
        bool same = r.accepted && r.sequence.size() == ids.size();
        for (std::size_t i = 0; same && i < ids.size(); ++i)
            if (r.sequence[i].id != ids[i]) same = false;
        if (same) ++restored;
    }

    // 300 full grid proofs: the board layout survives the whole protocol.
    const AbcPuzzle puzzle = fixtures::abc_reference_puzzle();
    const AbcSolution witness = fixtures::abc_reference_solution();
    for (std::uint64_t t = 0; t < 300; ++t) {
        SeededRng rng(derive_seed(2165, t));
        ProtocolResult r = prove_abc(puzzle, witness, rng);
        if (r.accepted && !r.initial_layout.empty() &&
            r.initial_layout == r.final_layout)
            ++restored;
    }

    std::ostringstream d;
    d << restored << "/" << total
      << " accepting runs ended with the starting id layout";
    report(6, "restoration", restored == total, d.str());
}

// --- 7. Determinism: one seed, one byte sequence. ---------------------------
void criterion_determinism() {
    const AbcPuzzle abc_puzzle = fixtures::abc_reference_puzzle();
    const AbcSolution abc_witness = fixtures::abc_reference_solution();
    const GoishiPuzzle goishi_puzzle = fixtures::goishi_reference_puzzle();
    const GoishiSolution goishi_witness = fixtures::goishi_reference_solution();

    int identical = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SeededRng first(seed), second(seed);
        const std::string a =
            transcript_to_text(prove_abc(abc_puzzle, abc_witness, first).transcript);
        const std::string b =
            transcript_to_text(prove_abc(abc_puzzle, abc_witness, second).transcript);
        if (a == b) ++identical;
    }
    int stone_identical = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SeededRng first(seed), second(seed);
        const std::string a = transcript_to_text(
            prove_goishi(goishi_puzzle, goishi_witness, first).transcript);
        const std::string b = transcript_to_text(
            prove_goishi(goishi_puzzle, goishi_witness, second).transcript);
        if (a == b) ++stone_identical;
    }

    std::ostringstream d;
    d << identical << "/100 grid seeds and " << stone_identical
      << "/10 stone seeds byte-identical";
    report(7, "determinism", identical == 100 && stone_identical == 10, d.str());
}

} // namespace

int main() {
    criterion_completeness();
    criterion_soundness();
    criterion_fnz_exhaustive();
    criterion_zero_knowledge();
    criterion_costs();
    criterion_restoration();
    criterion_determinism();
    return all_pass ? 0 : 1;
}
