#include "cardzk/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace cardzk {

namespace {

// Runs the FirstNonZero primitive as a standalone protocol: mint the sequence,
// prove the claim, and package the outcome like the puzzle provers do.
ProtocolResult run_fnz(const std::vector<int>& values, int claim_pos,
                       const std::optional<int>& expected_value, RandomSource& rng) {
    int max_value = 1;
    for (int v : values) max_value = std::max(max_value, v);
    Engine engine(max_value);

    std::vector<Card> sequence;
    sequence.reserve(values.size());
    ProtocolResult out;
    for (int v : values) {
        sequence.push_back(engine.make_card(v));
        out.initial_layout.push_back(sequence.back().id);
    }

    FnzOptions options;
    options.expected = expected_value;
    FnzResult r = first_non_zero(engine, std::move(sequence), claim_pos, options, rng);

    out.accepted = r.accepted;
    out.reason = r.reason;
    out.grid_cards = 2 * static_cast<int>(values.size()) - 1;
    if (r.accepted)
        for (const Card& c : r.sequence) out.final_layout.push_back(c.id);
    out.cards_created = engine.cards_created();
    out.transcript = engine.take_transcript();
    return out;
}

int count_clues(const AbcPuzzle& p) {
    int clues = 0;
    for (const auto* side : {&p.top, &p.bottom, &p.left, &p.right})
        for (int v : *side)
            if (v != 0) ++clues;
    return clues;
}

void tally(TrialReport& report, const ProtocolResult& r) {
    ++report.runs;
    if (r.accepted)
        ++report.accepts;
    else
        ++report.rejects_by_reason[std::string(reason_token(r.reason))];
    ++report.shuffle_histogram[r.transcript.shuffle_count()];
    for (const MarkerSample& s : extract_marker_samples(r.transcript))
        ++report.marker_histogram[s.site][s.col];
}

// Stable binning token for one transcript event: kind, position and any
// publicly revealed value.  Hidden placements carry no value by construction.
std::string event_token(const TranscriptEvent& event) {
    std::ostringstream os;
    if (const auto* sh = std::get_if<ShuffleEvent>(&event)) {
        os << "shuffle " << (sh->kind == ShuffleKind::Cyclic ? "cyclic" : "scramble")
           << ' ' << sh->rows << ' ' << sh->cols;
    } else if (const auto* rv = std::get_if<RevealEvent>(&event)) {
        os << "reveal " << rv->row << ' ' << rv->col << ' ' << rv->depth << ' '
           << rv->value;
    } else if (const auto* pl = std::get_if<PlaceEvent>(&event)) {
        os << "place " << pl->row << ' ' << pl->col << ' ';
        if (pl->vis == Visibility::PublicValue)
            os << "public " << pl->value;
        else
            os << "hidden";
    } else if (const auto* sf = std::get_if<PublicShiftEvent>(&event)) {
        os << "shift " << sf->offset;
    } else if (const auto* vd = std::get_if<VerdictEvent>(&event)) {
        os << "verdict " << (vd->accept ? "accept" : "reject") << ' '
           << reason_token(vd->reason);
    }
    return os.str();
}

using SlotHistogram = std::vector<std::map<std::string, std::uint64_t>>;

SlotHistogram collect_slots(const ProtocolInstance& instance, std::uint64_t trials,
                            std::uint64_t stream_seed) {
    SlotHistogram slots;
    for (std::uint64_t t = 0; t < trials; ++t) {
        ProtocolResult r = instance.run(derive_seed(stream_seed, t));
        if (slots.size() < r.transcript.events.size())
            slots.resize(r.transcript.events.size());
        for (std::size_t i = 0; i < r.transcript.events.size(); ++i)
            ++slots[i][event_token(r.transcript.events[i])];
    }
    // Trials whose transcript stopped before a slot count as an explicit
    // "absent" outcome so per-slot distributions always sum to `trials`.
    for (auto& slot : slots) {
        std::uint64_t seen = 0;
        for (const auto& [token, n] : slot) seen += n;
        if (seen < trials) slot["absent"] = trials - seen;
    }
    return slots;
}

ZkAuditReport equivalence_core(const ProtocolInstance& a, const ProtocolInstance& b,
                               std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) {
        ZkAuditReport vacuous;
        vacuous.pass = true;
        return vacuous;
    }
    SlotHistogram ha = collect_slots(a, trials, derive_seed(seed, 0));
    SlotHistogram hb = collect_slots(b, trials, derive_seed(seed, 1));

    const std::size_t n_slots = std::max(ha.size(), hb.size());
    static const std::map<std::string, std::uint64_t> kEmptySlot;
    double worst = (ha.size() == hb.size()) ? 0.0 : 1.0;
    for (std::size_t i = 0; i < n_slots; ++i) {
        const auto& pa = i < ha.size() ? ha[i] : kEmptySlot;
        const auto& pb = i < hb.size() ? hb[i] : kEmptySlot;
        double tv = 0.0;
        for (const auto& [token, n] : pa) {
            auto it = pb.find(token);
            const double qa = static_cast<double>(n) / static_cast<double>(trials);
            const double qb = it == pb.end()
                                  ? 0.0
                                  : static_cast<double>(it->second) /
                                        static_cast<double>(trials);
            tv += std::abs(qa - qb);
        }
        for (const auto& [token, n] : pb)
            if (!pa.count(token))
                tv += static_cast<double>(n) / static_cast<double>(trials);
        worst = std::max(worst, 0.5 * tv);
    }

    ZkAuditReport report;
    report.chi_square_stat = 0.0;
    report.tv_distance = worst;
    report.pass = worst < 0.05;
    return report;
}

std::string format_real(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

} // namespace

ProtocolInstance make_fnz_instance(std::vector<int> values, int claim_pos,
                                   std::optional<int> expected_value) {
    if (values.empty()) throw std::invalid_argument("sequence must be non-empty");
    ProtocolInstance inst;
    inst.name = "first-non-zero";
    const int n = static_cast<int>(values.size());
    inst.expected_shuffles = 2;
    inst.expected_grid_cards = 2 * n - 1;
    inst.expected_cards_created = 3 * (2 * n - 1);
    inst.run = [values = std::move(values), claim_pos,
                expected_value](std::uint64_t seed) {
        SeededRng rng(seed);
        return run_fnz(values, claim_pos, expected_value, rng);
    };
    return inst;
}

ProtocolInstance make_rigged_fnz_instance(std::vector<int> values, int claim_pos) {
    ProtocolInstance inst = make_fnz_instance(values, claim_pos, {});
    inst.name = "first-non-zero-rigged";
    inst.run = [values = std::move(values), claim_pos](std::uint64_t) {
        // Ignore the seed entirely: every shuffle draws offset 0.
        ConstantRng rng(0);
        return run_fnz(values, claim_pos, {}, rng);
    };
    return inst;
}

ProtocolInstance make_abc_instance(AbcPuzzle puzzle, AbcSolution witness) {
    check_abc_puzzle(puzzle);
    ProtocolInstance inst;
    inst.name = "abc-end-view";
    inst.expected_shuffles = 2 * (2 * puzzle.n + count_clues(puzzle));
    inst.expected_grid_cards = puzzle.n * puzzle.n;
    inst.run = [puzzle = std::move(puzzle),
                witness = std::move(witness)](std::uint64_t seed) {
        SeededRng rng(seed);
        return prove_abc(puzzle, witness, rng);
    };
    return inst;
}

ProtocolInstance make_goishi_instance(GoishiPuzzle puzzle, GoishiSolution witness) {
    check_goishi_puzzle(puzzle);
    ProtocolInstance inst;
    inst.name = "goishi-hiroi";
    const int m = static_cast<int>(puzzle.stones.size());
    inst.expected_shuffles = 2 + 6 * (m - 1);
    inst.expected_grid_cards = (3 * puzzle.n - 2) * (3 * puzzle.n - 2);
    inst.run = [puzzle = std::move(puzzle),
                witness = std::move(witness)](std::uint64_t seed) {
        SeededRng rng(seed);
        return prove_goishi(puzzle, witness, rng);
    };
    return inst;
}

std::vector<MarkerSample> extract_marker_samples(const Transcript& t) {
    std::vector<MarkerSample> samples;
    int site = -1;
    const auto& events = t.events;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto* shuffle = std::get_if<ShuffleEvent>(&events[i]);
        if (!shuffle || shuffle->kind != ShuffleKind::Cyclic) continue;
        ++site;

        std::size_t j = i + 1;
        const auto* first = j < events.size() ? std::get_if<RevealEvent>(&events[j])
                                              : nullptr;
        if (!first) continue;
        const int row = first->row;
        int count = 0;
        int ones = 0;
        int one_col = -1;
        while (j < events.size()) {
            const auto* reveal = std::get_if<RevealEvent>(&events[j]);
            if (!reveal || reveal->row != row) break;
            ++count;
            if (reveal->value == 1) {
                ++ones;
                one_col = reveal->col;
            }
            ++j;
        }
        if (count == shuffle->cols && ones == 1)
            samples.push_back({site, shuffle->cols, one_col});
    }
    return samples;
}

std::uint64_t TrialReport::total_rejects() const {
    std::uint64_t total = 0;
    for (const auto& [token, n] : rejects_by_reason) total += n;
    return total;
}

std::string TrialReport::to_text() const {
    std::ostringstream os;
    os << "trial-report runs=" << runs << " accepts=" << accepts << '\n';
    for (const auto& [token, n] : rejects_by_reason)
        os << "reject reason=" << token << " count=" << n << '\n';
    for (const auto& [shuffles, n] : shuffle_histogram)
        os << "shuffles count=" << shuffles << " runs=" << n << '\n';
    for (const auto& [site, cols] : marker_histogram)
        for (const auto& [col, n] : cols)
            os << "marker site=" << site << " col=" << col << " count=" << n << '\n';
    return os.str();
}

std::string ZkAuditReport::to_text() const {
    std::ostringstream os;
    os << "zk-audit chi2=" << format_real(chi_square_stat)
       << " band=" << (pass ? "pass" : "fail")
       << " tv=" << format_real(tv_distance) << '\n';
    for (const Site& s : sites)
        os << "site index=" << s.site << " cols=" << s.cols
           << " samples=" << s.samples << " chi2=" << format_real(s.chi_square)
           << " p=" << format_real(s.p_value) << '\n';
    return os.str();
}

std::string CostAudit::to_text() const {
    std::ostringstream os;
    os << "cost cards=" << cards_created << " shuffles=" << shuffles
       << " grid=" << grid_cards << '\n';
    return os.str();
}

TrialReport completeness_sweep(const ProtocolInstance& instance,
                               std::uint64_t trials, std::uint64_t seed) {
    TrialReport report;
    for (std::uint64_t t = 0; t < trials; ++t)
        tally(report, instance.run(derive_seed(seed, t)));
    return report;
}

TrialReport soundness_exhaustive(const AbcPuzzle& puzzle, std::uint64_t seed,
                                 std::uint64_t max_enumeration) {
    check_abc_puzzle(puzzle);
    const int cells = puzzle.n * puzzle.n;
    const int radix = puzzle.k + 1;
    std::uint64_t size = 1;
    for (int i = 0; i < cells; ++i) {
        size *= static_cast<std::uint64_t>(radix);
        if (size > max_enumeration)
            throw std::invalid_argument("grid enumeration exceeds the exhaustive bound");
    }

    TrialReport report;
    std::vector<int> digits(cells, 0);
    std::uint64_t index = 0;
    while (true) {
        AbcSolution candidate;
        candidate.grid.assign(puzzle.n, std::vector<int>(puzzle.n, 0));
        for (int i = 0; i < cells; ++i)
            candidate.grid[i / puzzle.n][i % puzzle.n] = digits[i];

        const bool valid = validate_abc(puzzle, candidate);
        SeededRng rng(derive_seed(seed, index));
        ProtocolResult r = prove_abc(puzzle, candidate, rng);
        if (r.accepted != valid)
            throw std::logic_error("prover verdict disagrees with the validator on grid " +
                                   std::to_string(index));
        tally(report, r);

        ++index;
        int pos = 0;
        while (pos < cells) {
            if (++digits[pos] < radix) break;
            digits[pos] = 0;
            ++pos;
        }
        if (pos == cells) break;
    }
    return report;
}

TrialReport soundness_exhaustive(const GoishiPuzzle& puzzle, std::uint64_t seed,
                                 std::uint64_t max_enumeration) {
    check_goishi_puzzle(puzzle);
    const std::uint64_t m = puzzle.stones.size();
    std::uint64_t size = 1;
    for (std::uint64_t i = 2; i <= m; ++i) {
        size *= i;
        if (size > max_enumeration)
            throw std::invalid_argument("pick enumeration exceeds the exhaustive bound");
    }

    TrialReport report;
    std::vector<std::pair<int, int>> picks = puzzle.stones;
    std::sort(picks.begin(), picks.end());
    std::uint64_t index = 0;
    do {
        GoishiSolution candidate{picks};
        const bool valid = validate_goishi(puzzle, candidate);
        SeededRng rng(derive_seed(seed, index));
        ProtocolResult r = prove_goishi(puzzle, candidate, rng);
        if (r.accepted != valid)
            throw std::logic_error(
                "prover verdict disagrees with the validator on ordering " +
                std::to_string(index));
        tally(report, r);
        ++index;
    } while (std::next_permutation(picks.begin(), picks.end()));
    return report;
}

ZkAuditReport zk_uniformity_audit(const ProtocolInstance& instance,
                                  std::uint64_t trials, std::uint64_t seed) {
    std::map<int, std::pair<int, std::map<int, std::uint64_t>>> per_site;
    for (std::uint64_t t = 0; t < trials; ++t) {
        ProtocolResult r = instance.run(derive_seed(seed, t));
        for (const MarkerSample& s : extract_marker_samples(r.transcript)) {
            auto& entry = per_site[s.site];
            entry.first = s.cols;
            ++entry.second[s.col];
        }
    }

    ZkAuditReport report;
    report.pass = true;
    report.tv_distance = 0.0;
    std::size_t tested = 0;
    double worst_p = 2.0;
    for (const auto& [site, data] : per_site) {
        const int cols = data.first;
        std::uint64_t total = 0;
        for (const auto& [col, n] : data.second) total += n;

        ZkAuditReport::Site entry{site, cols, total, 0.0, 1.0};
        if (cols >= 2 && total > 0) {
            const double expected =
                static_cast<double>(total) / static_cast<double>(cols);
            double chi2 = 0.0;
            for (int c = 0; c < cols; ++c) {
                auto it = data.second.find(c);
                const double observed =
                    it == data.second.end() ? 0.0
                                            : static_cast<double>(it->second);
                const double diff = observed - expected;
                chi2 += diff * diff / expected;
            }
            boost::math::chi_squared dist(cols - 1);
            const double p = boost::math::cdf(boost::math::complement(dist, chi2));
            entry.chi_square = chi2;
            entry.p_value = p;
            ++tested;
            if (p < worst_p) {
                worst_p = p;
                report.chi_square_stat = chi2;
            }
        }
        report.sites.push_back(entry);
    }
    // One audit spans many independent per-site tests; dividing the
    // significance level across them keeps the audit-wide false-failure
    // rate at 0.01 regardless of how many cut sites a protocol has.
    if (tested > 0 && worst_p < 0.01 / static_cast<double>(tested))
        report.pass = false;
    return report;
}

ZkAuditReport zk_witness_equivalence(const AbcPuzzle& puzzle,
                                     const AbcSolution& witness1,
                                     const AbcSolution& witness2,
                                     std::uint64_t trials, std::uint64_t seed) {
    if (!validate_abc(puzzle, witness1) || !validate_abc(puzzle, witness2))
        throw std::invalid_argument("equivalence audit needs two valid witnesses");
    return equivalence_core(make_abc_instance(puzzle, witness1),
                            make_abc_instance(puzzle, witness2), trials, seed);
}

ZkAuditReport zk_witness_equivalence(const GoishiPuzzle& puzzle,
                                     const GoishiSolution& witness1,
                                     const GoishiSolution& witness2,
                                     std::uint64_t trials, std::uint64_t seed) {
    if (!validate_goishi(puzzle, witness1) || !validate_goishi(puzzle, witness2))
        throw std::invalid_argument("equivalence audit needs two valid witnesses");
    return equivalence_core(make_goishi_instance(puzzle, witness1),
                            make_goishi_instance(puzzle, witness2), trials, seed);
}

ZkAuditReport zk_witness_equivalence(const ProtocolInstance& a,
                                     const ProtocolInstance& b,
                                     std::uint64_t trials, std::uint64_t seed) {
    return equivalence_core(a, b, trials, seed);
}

CostAudit cost_audit(const ProtocolInstance& instance, std::uint64_t seed) {
    ProtocolResult r = instance.run(derive_seed(seed, 0));
    CostAudit audit;
    audit.cards_created = r.cards_created;
    audit.shuffles = r.transcript.shuffle_count();
    audit.grid_cards = r.grid_cards;

    if (instance.expected_shuffles >= 0 && audit.shuffles != instance.expected_shuffles)
        throw std::logic_error("shuffle count " + std::to_string(audit.shuffles) +
                               " deviates from the declared formula " +
                               std::to_string(instance.expected_shuffles));
    if (instance.expected_grid_cards >= 0 &&
        audit.grid_cards != instance.expected_grid_cards)
        throw std::logic_error("grid card count " + std::to_string(audit.grid_cards) +
                               " deviates from the declared formula " +
                               std::to_string(instance.expected_grid_cards));
    if (instance.expected_cards_created >= 0 &&
        static_cast<std::int64_t>(audit.cards_created) !=
            instance.expected_cards_created)
        throw std::logic_error("card allocation " + std::to_string(audit.cards_created) +
                               " deviates from the declared formula " +
                               std::to_string(instance.expected_cards_created));
    return audit;
}

} // namespace cardzk
