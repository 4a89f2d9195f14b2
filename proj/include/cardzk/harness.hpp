#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cardzk/abc.hpp"
#include "cardzk/goishi.hpp"
#include "cardzk/primitives.hpp"

namespace cardzk {

// A repeatable protocol run: given a seed, produce one full proof attempt.
// The expected_* fields pin the exact cost formulas a single run must meet;
// a negative value means "not audited".
struct ProtocolInstance {
    std::string name;
    std::function<ProtocolResult(std::uint64_t seed)> run;
    int expected_shuffles = -1;
    int expected_grid_cards = -1;
    std::int64_t expected_cards_created = -1;
};

// Ready-made instances for the three protocols.  The sequence/witness is
// captured by value; each run builds a fresh engine.
ProtocolInstance make_fnz_instance(std::vector<int> values, int claim_pos,
                                   std::optional<int> expected_value = {});
ProtocolInstance make_abc_instance(AbcPuzzle puzzle, AbcSolution witness);
ProtocolInstance make_goishi_instance(GoishiPuzzle puzzle, GoishiSolution witness);

// Deliberately broken double: runs the same protocol with a constant-offset
// shuffle source, so marker positions stop being uniform.  Used as a negative
// control for the uniformity audit.
ProtocolInstance make_rigged_fnz_instance(std::vector<int> values, int claim_pos);

// One marker observation: after the site-th cyclic shuffle of a transcript, a
// full row of cols cards was revealed containing exactly one 1, at column col.
struct MarkerSample {
    int site;
    int cols;
    int col;
};

// Scans a transcript for cut openings/closings: every cyclic shuffle that is
// immediately followed by a full single-row reveal holding exactly one 1
// yields a sample.  Site ordinals count cyclic shuffles in transcript order.
std::vector<MarkerSample> extract_marker_samples(const Transcript& t);

// Aggregate outcome of repeated proof runs.
struct TrialReport {
    std::uint64_t runs = 0;
    std::uint64_t accepts = 0;
    std::map<std::string, std::uint64_t> rejects_by_reason;
    std::map<int, std::uint64_t> shuffle_histogram;             // shuffles -> runs
    std::map<int, std::map<int, std::uint64_t>> marker_histogram; // site -> col -> n

    std::uint64_t total_rejects() const;
    // Canonical text form; identical reports serialize to identical bytes.
    std::string to_text() const;
};

// Outcome of a statistical zero-knowledge audit.  For uniformity audits the
// chi-square fields describe the worst cut site; for witness-equivalence
// audits tv_distance carries the largest per-event-slot total-variation
// distance.  pass mirrors the fixed significance bands (0.01 / 0.05).
struct ZkAuditReport {
    double chi_square_stat = 0.0;
    bool pass = false;
    double tv_distance = 0.0;

    struct Site {
        int site;
        int cols;
        std::uint64_t samples;
        double chi_square;
        double p_value;
    };
    std::vector<Site> sites;

    std::string to_text() const;
};

// Property checks ---------------------------------------------------------

// Runs the instance `trials` times with seeds derived from `seed` and tallies
// verdicts; an honest witness must show accepts == trials.
TrialReport completeness_sweep(const ProtocolInstance& instance,
                               std::uint64_t trials, std::uint64_t seed);

// Enumerates every candidate witness for a small puzzle and checks that the
// prover's verdict matches the plain validator on each one.  Throws
// std::invalid_argument when the enumeration would exceed max_enumeration and
// std::logic_error on any verdict disagreement.
inline constexpr std::uint64_t kMaxEnumeration = 1000000;
TrialReport soundness_exhaustive(const AbcPuzzle& puzzle, std::uint64_t seed,
                                 std::uint64_t max_enumeration = kMaxEnumeration);
TrialReport soundness_exhaustive(const GoishiPuzzle& puzzle, std::uint64_t seed,
                                 std::uint64_t max_enumeration = kMaxEnumeration);

// Collects marker-reveal positions across `trials` runs and chi-square-tests
// every cut site against the uniform distribution.  The audit passes at
// overall significance 0.01: the per-site threshold is 0.01 divided by the
// number of tested sites, so the audit-wide false-failure rate stays at 1%
// however many cut sites the protocol opens.  Single-column sites are
// degenerate and pass trivially.
ZkAuditReport zk_uniformity_audit(const ProtocolInstance& instance,
                                  std::uint64_t trials, std::uint64_t seed);

// Runs `trials` proofs per witness, bins transcript events per slot by
// (kind, position, revealed value) and reports the largest per-slot empirical
// total-variation distance; pass when below 0.05.
ZkAuditReport zk_witness_equivalence(const AbcPuzzle& puzzle,
                                     const AbcSolution& witness1,
                                     const AbcSolution& witness2,
                                     std::uint64_t trials, std::uint64_t seed);
ZkAuditReport zk_witness_equivalence(const GoishiPuzzle& puzzle,
                                     const GoishiSolution& witness1,
                                     const GoishiSolution& witness2,
                                     std::uint64_t trials, std::uint64_t seed);
// Raw variant for pre-built instances; used to pit an honest run against a
// deliberately biased double, which must push the distance past the band.
ZkAuditReport zk_witness_equivalence(const ProtocolInstance& a,
                                     const ProtocolInstance& b,
                                     std::uint64_t trials, std::uint64_t seed);

// Cost bookkeeping of one proof run.
struct CostAudit {
    std::uint64_t cards_created = 0;
    int shuffles = 0;
    int grid_cards = 0;

    std::string to_text() const;
};

// Runs the instance once and checks its counts against the instance's
// expected formulas; throws std::logic_error on mismatch.
CostAudit cost_audit(const ProtocolInstance& instance, std::uint64_t seed);

} // namespace cardzk
