// Command-line front end for card-based zero-knowledge puzzle proofs:
// solve puzzles, run the proof protocols, validate recorded transcripts,
// and audit the protocols' statistical guarantees.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cardzk/harness.hpp"
#include "cardzk/puzzle_io.hpp"
#include "cardzk/transcript_io.hpp"

namespace {

using namespace cardzk;

constexpr int kExitParse = 2;
constexpr int kExitNoWitness = 3;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Parses a puzzle file, reporting problems the way every subcommand does.
std::optional<PuzzleFile> load_puzzle(const std::string& path) {
    std::optional<std::string> text = read_file(path);
    if (!text) {
        std::cerr << path << ": cannot read file\n";
        return std::nullopt;
    }
    try {
        return parse_puzzle_text(*text);
    } catch (const ParseError& e) {
        std::cerr << path << ": " << e.what() << '\n';
        return std::nullopt;
    }
}

int cmd_solve(const std::string& path, std::optional<std::uint64_t> limit) {
    std::optional<PuzzleFile> file = load_puzzle(path);
    if (!file) return kExitParse;

    std::size_t count = 0;
    if (file->kind == PuzzleKind::Abc) {
        auto solutions = solve_abc(file->abc, limit);
        count = solutions.size();
        for (std::size_t i = 0; i < solutions.size(); ++i) {
            if (i) std::cout << '\n';
            std::cout << abc_grid_to_text(solutions[i], file->abc.k);
        }
    } else {
        auto solutions = solve_goishi(file->goishi, limit);
        count = solutions.size();
        for (const auto& s : solutions) std::cout << goishi_picks_to_text(s);
    }
    return count > 0 ? 0 : 1;
}

int cmd_prove(const std::string& path, std::uint64_t seed,
              const std::string& transcript_path) {
    std::optional<PuzzleFile> file = load_puzzle(path);
    if (!file) return kExitParse;
    if (!file->has_witness()) {
        std::cerr << path << ": puzzle file carries no solution/picks block\n";
        return kExitNoWitness;
    }

    SeededRng rng(seed);
    ProtocolResult result = file->kind == PuzzleKind::Abc
                                ? prove_abc(file->abc, *file->abc_solution, rng)
                                : prove_goishi(file->goishi, *file->goishi_picks, rng);

    if (!transcript_path.empty()) {
        std::ofstream out(transcript_path, std::ios::binary);
        if (!out) {
            std::cerr << transcript_path << ": cannot write transcript\n";
            return kExitParse;
        }
        out << transcript_to_text(result.transcript);
    }

    if (result.accepted) {
        std::cout << "accept\n";
        return 0;
    }
    std::cout << "reject reason=" << reason_token(result.reason);
    if (!result.detail.empty()) std::cout << " at " << result.detail;
    std::cout << '\n';
    return 1;
}

int cmd_verify_transcript(const std::string& puzzle_path,
                          const std::string& transcript_path) {
    // Only two outcomes exist here: a legal accepting view, or not.
    std::optional<std::string> puzzle_text = read_file(puzzle_path);
    if (!puzzle_text) {
        std::cerr << puzzle_path << ": cannot read file\n";
        return 1;
    }
    std::optional<std::string> transcript_text = read_file(transcript_path);
    if (!transcript_text) {
        std::cerr << transcript_path << ": cannot read file\n";
        return 1;
    }
    try {
        PuzzleFile puzzle = parse_puzzle_text(*puzzle_text);
        Transcript transcript = parse_transcript_text(*transcript_text);
        SchemaCheck check = validate_transcript(puzzle, transcript);
        if (!check.ok) {
            std::cerr << transcript_path << ": line " << check.line << ": "
                      << check.message << '\n';
            return 1;
        }
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    std::cout << "ok\n";
    return 0;
}

int cmd_audit(const std::string& path, std::uint64_t trials, std::uint64_t seed,
              bool biased) {
    std::optional<PuzzleFile> file = load_puzzle(path);
    if (!file) return kExitParse;
    if (!file->has_witness()) {
        std::cerr << path << ": audits need the solution/picks block\n";
        return kExitParse;
    }

    ProtocolInstance instance =
        file->kind == PuzzleKind::Abc
            ? make_abc_instance(file->abc, *file->abc_solution)
            : make_goishi_instance(file->goishi, *file->goishi_picks);
    if (biased) {
        // Debug double: every shuffle draws offset/permutation step 0.
        if (file->kind == PuzzleKind::Abc) {
            AbcPuzzle p = file->abc;
            AbcSolution w = *file->abc_solution;
            instance.run = [p, w](std::uint64_t) {
                ConstantRng rng(0);
                return prove_abc(p, w, rng);
            };
        } else {
            GoishiPuzzle p = file->goishi;
            GoishiSolution w = *file->goishi_picks;
            instance.run = [p, w](std::uint64_t) {
                ConstantRng rng(0);
                return prove_goishi(p, w, rng);
            };
        }
    }

    TrialReport sweep = completeness_sweep(instance, trials, derive_seed(seed, 1));
    ZkAuditReport uniformity =
        zk_uniformity_audit(instance, trials, derive_seed(seed, 2));

    bool cost_ok = true;
    std::string cost_text;
    try {
        cost_text = cost_audit(instance, derive_seed(seed, 3)).to_text();
    } catch (const std::logic_error& e) {
        cost_ok = false;
        cost_text = std::string("cost deviation: ") + e.what() + "\n";
    }

    std::cout << sweep.to_text() << uniformity.to_text() << cost_text;

    const bool all_accepted = sweep.accepts == sweep.runs;
    return (all_accepted && uniformity.pass && cost_ok) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"card-based zero-knowledge proofs for pencil puzzles"};
    app.require_subcommand(1);

    std::string puzzle_path;
    std::string transcript_path;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1000;
    std::optional<std::uint64_t> limit;
    bool biased = false;

    CLI::App* solve = app.add_subcommand(
        "solve", "Enumerate solutions of a puzzle file to standard output");
    solve->add_option("puzzle", puzzle_path, "puzzle file")->required();
    solve->add_option("--limit", limit, "stop after this many solutions");

    CLI::App* prove = app.add_subcommand(
        "prove",
        "Run the zero-knowledge proof for the file's solution/picks witness");
    prove->add_option("puzzle", puzzle_path, "puzzle file with witness")->required();
    prove->add_option("--seed", seed, "64-bit seed for all shuffles");
    prove->add_option("--transcript", transcript_path,
                      "write the public view to this file");

    CLI::App* verify = app.add_subcommand(
        "verify-transcript",
        "Check that a transcript is a legal accepting view for the puzzle");
    verify->add_option("puzzle", puzzle_path, "puzzle file")->required();
    verify->add_option("transcript", transcript_path, "transcript file")->required();

    CLI::App* audit = app.add_subcommand(
        "audit",
        "Sweep completeness, marker uniformity and costs for the file's witness");
    audit->add_option("puzzle", puzzle_path, "puzzle file with witness")->required();
    audit->add_option("--trials", trials, "number of proof runs");
    audit->add_option("--seed", seed, "64-bit master seed");
    audit->add_flag("--biased-shuffle", biased,
                    "debug: replace shuffles with a constant-offset double");

    app.footer("Puzzle coordinates are 0-based: picks list r,c pairs with row 0 at "
               "the top; letters are A.. within the puzzle's alphabet.");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return cmd_solve(puzzle_path, limit);
    if (prove->parsed()) return cmd_prove(puzzle_path, seed, transcript_path);
    if (verify->parsed()) return cmd_verify_transcript(puzzle_path, transcript_path);
    if (audit->parsed()) return cmd_audit(puzzle_path, trials, seed, biased);
    return kExitParse;
}
