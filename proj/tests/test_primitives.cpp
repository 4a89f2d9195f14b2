#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cardzk/primitives.hpp"
#include "cardzk/rng.hpp"

using namespace cardzk;

namespace {

constexpr double kChi2Df5 = 20.515; // tail 0.001

std::vector<Card> mint(Engine& e, const std::vector<int>& vals) {
    std::vector<Card> out;
    out.reserve(vals.size());
    for (int v : vals) out.push_back(e.make_card(v));
    return out;
}

std::vector<int> values_of(const std::vector<Card>& cards) {
    std::vector<int> out;
    out.reserve(cards.size());
    for (const Card& c : cards) out.push_back(c.value);
    return out;
}

std::vector<std::uint64_t> ids_of(const std::vector<Card>& cards) {
    std::vector<std::uint64_t> out;
    out.reserve(cards.size());
    for (const Card& c : cards) out.push_back(c.id);
    return out;
}

} // namespace

TEST_CASE("first-nonzero accepts the true first nonzero term and restores order") {
    Engine e(9);
    SeededRng rng(601);
    auto seq = mint(e, {0, 0, 2, 1, 0});
    auto ids = ids_of(seq);

    FnzResult r = first_non_zero(e, seq, 2, {}, rng);
    CHECK(r.accepted);
    CHECK(r.reason == Reason::None);
    REQUIRE(r.revealed.has_value());
    CHECK(*r.revealed == 2);
    CHECK(values_of(r.sequence) == std::vector<int>{0, 0, 2, 1, 0});
    CHECK(ids_of(r.sequence) == ids);
    CHECK(e.transcript().shuffle_count() == 2);
    // 5 sequence cards + 4 zero pads + 9 markers + 9 anchors.
    CHECK(e.cards_created() == 27);
}

TEST_CASE("first-nonzero reveal accounting matches the padded cut") {
    Engine e(9);
    SeededRng rng(602);
    auto seq = mint(e, {0, 3, 1});
    FnzResult r = first_non_zero(e, seq, 1, {}, rng);
    REQUIRE(r.accepted);

    int reveals = 0;
    for (const auto& ev : e.transcript().events)
        if (std::holds_alternative<RevealEvent>(ev)) ++reveals;
    // 5 marker + 2 predecessors + 1 chosen + 5 anchor.
    CHECK(reveals == 13);
    CHECK(std::holds_alternative<PublicShiftEvent>(e.transcript().events.back()));
}

TEST_CASE("first-nonzero rejects a claim past the first nonzero term") {
    Engine e(9);
    SeededRng rng(603);
    auto seq = mint(e, {0, 0, 2, 1, 0});
    FnzResult r = first_non_zero(e, seq, 3, {}, rng);
    CHECK(!r.accepted);
    CHECK(r.reason == Reason::NonzeroBefore);
    CHECK(!r.revealed.has_value());
    CHECK(r.sequence.empty());
}

TEST_CASE("first-nonzero rejects a claim before the first nonzero term") {
    Engine e(9);
    SeededRng rng(604);
    auto seq = mint(e, {0, 0, 2, 1, 0});
    FnzResult r = first_non_zero(e, seq, 1, {}, rng);
    CHECK(!r.accepted);
    CHECK(r.reason == Reason::ZeroAtChosen);
    REQUIRE(r.revealed.has_value());
    CHECK(*r.revealed == 0);
}

TEST_CASE("first-nonzero rejects an all-zero sequence at any claim") {
    for (int claim = 0; claim < 3; ++claim) {
        Engine e(9);
        SeededRng rng(605);
        auto seq = mint(e, {0, 0, 0});
        FnzResult r = first_non_zero(e, seq, claim, {}, rng);
        CHECK(!r.accepted);
        CHECK(r.reason == Reason::ZeroAtChosen);
    }
}

TEST_CASE("first-nonzero enforces an announced expected value") {
    Engine e(9);
    SeededRng rng(606);
    auto seq = mint(e, {0, 0, 2, 1, 0});
    FnzOptions wrong;
    wrong.expected = 3;
    FnzResult r = first_non_zero(e, seq, 2, wrong, rng);
    CHECK(!r.accepted);
    CHECK(r.reason == Reason::UnexpectedValue);
    REQUIRE(r.revealed.has_value());
    CHECK(*r.revealed == 2);

    Engine e2(9);
    auto seq2 = mint(e2, {0, 0, 2, 1, 0});
    FnzOptions right;
    right.expected = 2;
    CHECK(first_non_zero(e2, seq2, 2, right, rng).accepted);
}

TEST_CASE("first-nonzero installs a public replacement at the claimed position") {
    Engine e(9);
    SeededRng rng(607);
    auto seq = mint(e, {0, 0, 2, 1, 0});
    auto ids = ids_of(seq);
    FnzOptions opt;
    opt.replacement = e.make_card(9);

    FnzResult r = first_non_zero(e, seq, 2, opt, rng);
    REQUIRE(r.accepted);
    CHECK(values_of(r.sequence) == std::vector<int>{0, 0, 9, 1, 0});
    for (int j = 0; j < 5; ++j) {
        if (j == 2)
            CHECK(r.sequence[j].id == opt.replacement->id);
        else
            CHECK(r.sequence[j].id == ids[j]);
    }
    bool saw_public_place = false;
    for (const auto& ev : e.transcript().events)
        if (auto* p = std::get_if<PlaceEvent>(&ev))
            if (p->vis == Visibility::PublicValue && p->value == 9) saw_public_place = true;
    CHECK(saw_public_place);
}

TEST_CASE("first-nonzero handles a single-term sequence") {
    Engine e(9);
    SeededRng rng(608);
    auto seq = mint(e, {7});
    FnzResult r = first_non_zero(e, seq, 0, {}, rng);
    CHECK(r.accepted);
    CHECK(*r.revealed == 7);
    CHECK(e.cards_created() == 3); // the term, 1 marker, 1 anchor, no pads
    CHECK(e.transcript().shuffle_count() == 2);
}

TEST_CASE("first-nonzero validates its arguments") {
    Engine e(9);
    SeededRng rng(609);
    CHECK_THROWS_AS(first_non_zero(e, {}, 0, {}, rng), std::invalid_argument);
    auto seq = mint(e, {1, 2});
    CHECK_THROWS_AS(first_non_zero(e, seq, 2, {}, rng), std::invalid_argument);
    CHECK_THROWS_AS(first_non_zero(e, seq, -1, {}, rng), std::invalid_argument);
    FnzOptions opt;
    opt.replacement = e.make_card(1);
    opt.replacement->face = Face::Up;
    CHECK_THROWS_AS(first_non_zero(e, seq, 0, opt, rng), std::invalid_argument);
}

TEST_CASE("first-nonzero verdict agrees with ground truth on every small input") {
    // Every sequence over {0,1,2} of length 4, every claim: accept exactly
    // when the claim names the true first nonzero position, with the reject
    // reason fixed by which side of it the claim fell on.
    std::uint64_t case_index = 0;
    for (int code = 0; code < 81; ++code) {
        std::vector<int> vals(4);
        int rest = code;
        for (int i = 0; i < 4; ++i) {
            vals[i] = rest % 3;
            rest /= 3;
        }
        int truth = -1;
        for (int i = 0; i < 4; ++i)
            if (vals[i] != 0) {
                truth = i;
                break;
            }
        for (int claim = 0; claim < 4; ++claim) {
            Engine e(9);
            SeededRng rng(derive_seed(610, case_index++));
            FnzResult r = first_non_zero(e, mint(e, vals), claim, {}, rng);
            if (claim == truth) {
                CHECK(r.accepted);
                CHECK(*r.revealed == vals[claim]);
            } else {
                CHECK(!r.accepted);
                if (truth != -1 && claim > truth)
                    CHECK(r.reason == Reason::NonzeroBefore);
                else
                    CHECK(r.reason == Reason::ZeroAtChosen);
            }
        }
    }
}

TEST_CASE("first-nonzero restores ids across many honest runs") {
    for (std::uint64_t t = 0; t < 1000; ++t) {
        SeededRng rng(derive_seed(611, t));
        const int n = 1 + static_cast<int>(rng.next_below(8));
        std::vector<int> vals(n, 0);
        const int first = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        for (int i = first; i < n; ++i)
            vals[i] = i == first ? 1 + static_cast<int>(rng.next_below(3))
                                 : static_cast<int>(rng.next_below(4));
        Engine e(9);
        auto seq = mint(e, vals);
        auto ids = ids_of(seq);
        FnzResult r = first_non_zero(e, seq, first, {}, rng);
        REQUIRE(r.accepted);
        CHECK(ids_of(r.sequence) == ids);
        CHECK(values_of(r.sequence) == vals);
    }
}

TEST_CASE("multiset check accepts a matching hidden multiset and restores order") {
    Engine e(9);
    SeededRng rng(620);
    auto seq = mint(e, {2, 1, 3});
    auto ids = ids_of(seq);
    MultisetResult r = verify_multiset(e, seq, {1, 2, 3}, rng);
    CHECK(r.accepted);
    CHECK(values_of(r.sequence) == std::vector<int>{2, 1, 3});
    CHECK(ids_of(r.sequence) == ids);
    CHECK(e.transcript().shuffle_count() == 2);
    CHECK(e.cards_created() == 6); // 3 sequence + 3 index cards
}

TEST_CASE("multiset check is order-insensitive in the requirement") {
    Engine e(9);
    SeededRng rng(621);
    auto seq = mint(e, {1, 2, 2});
    CHECK(verify_multiset(e, seq, {2, 1, 2}, rng).accepted);
}

TEST_CASE("multiset check counts multiplicities") {
    {
        Engine e(9);
        SeededRng rng(622);
        auto seq = mint(e, {2, 1, 3});
        MultisetResult r = verify_multiset(e, seq, {1, 2, 2}, rng);
        CHECK(!r.accepted);
        CHECK(r.reason == Reason::MultisetMismatch);
        CHECK(r.sequence.empty());
    }
    {
        Engine e(9);
        SeededRng rng(623);
        auto seq = mint(e, {1, 1, 2});
        CHECK(!verify_multiset(e, seq, {1, 2, 2}, rng).accepted);
    }
}

TEST_CASE("multiset check reveals scrambled values then a full index row") {
    Engine e(9);
    SeededRng rng(624);
    auto seq = mint(e, {3, 1, 2});
    REQUIRE(verify_multiset(e, seq, {1, 2, 3}, rng).accepted);

    const auto& events = e.transcript().events;
    REQUIRE(events.size() == 8); // shuffle, 3 reveals, shuffle, 3 reveals
    CHECK(std::get<ShuffleEvent>(events[0]).kind == ShuffleKind::Permutation);
    CHECK(std::get<ShuffleEvent>(events[4]).kind == ShuffleKind::Permutation);

    std::vector<int> value_row, index_row;
    for (int c = 0; c < 3; ++c) {
        auto rv = std::get<RevealEvent>(events[1 + c]);
        CHECK(rv.row == 0);
        CHECK(rv.col == c);
        value_row.push_back(rv.value);
        auto ri = std::get<RevealEvent>(events[5 + c]);
        CHECK(ri.row == 1);
        CHECK(ri.col == c);
        index_row.push_back(ri.value);
    }
    std::sort(value_row.begin(), value_row.end());
    std::sort(index_row.begin(), index_row.end());
    CHECK(value_row == std::vector<int>{1, 2, 3});
    CHECK(index_row == std::vector<int>{1, 2, 3});
}

TEST_CASE("multiset check restores ids across many honest runs") {
    for (std::uint64_t t = 0; t < 1000; ++t) {
        SeededRng rng(derive_seed(625, t));
        const int n = 1 + static_cast<int>(rng.next_below(6));
        std::vector<int> vals(n);
        for (int i = 0; i < n; ++i) vals[i] = static_cast<int>(rng.next_below(5));
        Engine e(9);
        auto seq = mint(e, vals);
        auto ids = ids_of(seq);
        std::vector<int> req = vals;
        for (std::uint64_t s = 0; s + 1 < req.size(); ++s) {
            std::uint64_t j = s + rng.next_below(req.size() - s);
            std::swap(req[s], req[j]);
        }
        MultisetResult r = verify_multiset(e, seq, req, rng);
        REQUIRE(r.accepted);
        CHECK(ids_of(r.sequence) == ids);
        CHECK(values_of(r.sequence) == vals);
    }
}

TEST_CASE("multiset check hides the original order uniformly") {
    const int trials = 6000;
    std::vector<std::vector<int>> arrangements;
    std::vector<int> base{1, 2, 3};
    do {
        arrangements.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));

    std::vector<int> counts(6, 0);
    for (int t = 0; t < trials; ++t) {
        Engine e(9);
        SeededRng rng(derive_seed(626, static_cast<std::uint64_t>(t)));
        auto seq = mint(e, {1, 2, 3});
        REQUIRE(verify_multiset(e, seq, {1, 2, 3}, rng).accepted);
        // First three reveals after the first shuffle are the scrambled row.
        std::vector<int> seen;
        for (const auto& ev : e.transcript().events) {
            if (auto* rev = std::get_if<RevealEvent>(&ev)) {
                seen.push_back(rev->value);
                if (seen.size() == 3) break;
            }
        }
        auto it = std::find(arrangements.begin(), arrangements.end(), seen);
        REQUIRE(it != arrangements.end());
        ++counts[static_cast<int>(it - arrangements.begin())];
    }
    double chi2 = 0.0;
    for (int c : counts) {
        const double d = c - trials / 6.0;
        chi2 += d * d / (trials / 6.0);
    }
    CHECK(chi2 < kChi2Df5);
}

TEST_CASE("multiset check validates its arguments") {
    Engine e(9);
    SeededRng rng(627);
    CHECK_THROWS_AS(verify_multiset(e, {}, {}, rng), std::invalid_argument);
    auto seq = mint(e, {1, 2});
    CHECK_THROWS_AS(verify_multiset(e, seq, {1}, rng), std::invalid_argument);
}
