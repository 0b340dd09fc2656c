#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "resgame/core_analysis.hpp"

using namespace resgame;

namespace {

CharacteristicFunction three_service_table(double grand) {
    const std::vector<double> by_size = {0.0, 2.0, grand};
    return CharacteristicFunction::size_symmetric(3, by_size);
}

CharacteristicFunction random_table(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> worth_dist(0.0, 10.0);
    std::vector<std::pair<Coalition, double>> entries;
    for (const Coalition& coalition : enumerate_coalitions(n)) {
        entries.emplace_back(coalition, worth_dist(rng));
    }
    return CharacteristicFunction::from_table(n, entries);
}

}  // namespace

TEST_CASE("pairs empty the three-service core at a 2.5 grand worth") {
    const auto worth = three_service_table(2.5);
    CHECK(!core_nonempty(worth));

    const auto violations = find_violations(worth);
    REQUIRE(violations.size() == 3);
    // exactly the three pairs, ascending bitmask after the surplus tie
    CHECK(violations[0].coalition == Coalition::from_indices({0, 1}));
    CHECK(violations[1].coalition == Coalition::from_indices({0, 2}));
    CHECK(violations[2].coalition == Coalition::from_indices({1, 2}));
    for (const CoreViolation& violation : violations) {
        CHECK(violation.per_member_worth == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(violation.per_member_baseline == doctest::Approx(2.5 / 3.0).epsilon(1e-12));
        CHECK(violation.surplus == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    }
}

TEST_CASE("raising the grand worth to 3 restores loyalty") {
    const auto worth = three_service_table(3.0);
    CHECK(core_nonempty(worth));
    CHECK(find_violations(worth).empty());
}

TEST_CASE("a single service has no proper coalitions to check") {
    const std::vector<double> lone = {5.0};
    CHECK(core_nonempty(CharacteristicFunction::size_symmetric(1, lone)));
}

TEST_CASE("exact per-member ties are not violations") {
    // v(S) = |S| makes every per-member worth equal to the baseline
    const std::vector<double> proportional = {1.0, 2.0, 3.0, 4.0};
    const auto worth = CharacteristicFunction::size_symmetric(4, proportional);
    CHECK(core_nonempty(worth));
    CHECK(find_violations(worth).empty());
}

TEST_CASE("loyalty weighs competitor offers against the cooperative average") {
    const CournotGame game(3, 10.0, 2.0);  // baseline 16/3

    const std::vector<CompetitorOffer> strong = {
        CompetitorOffer(Coalition::from_indices({0, 1}), 12.0)};
    const LoyaltyReport pulled = loyalty_decision(game, strong);
    CHECK(!pulled.core_nonempty);
    REQUIRE(pulled.partial_switch.has_value());
    CHECK(*pulled.partial_switch == Coalition::from_indices({0, 1}));
    CHECK(pulled.baseline == doctest::Approx(16.0 / 3.0).epsilon(1e-12));

    const std::vector<CompetitorOffer> weak = {
        CompetitorOffer(Coalition::from_indices({0, 1}), 10.0)};
    const LoyaltyReport stays = loyalty_decision(game, weak);
    CHECK(stays.core_nonempty);
    CHECK(!stays.partial_switch.has_value());

    const LoyaltyReport unprompted = loyalty_decision(game, {});
    CHECK(unprompted.core_nonempty);
    CHECK(!unprompted.partial_switch.has_value());

    const std::vector<CompetitorOffer> out_of_range = {
        CompetitorOffer(Coalition::from_indices({0, 3}), 5.0)};
    CHECK_THROWS_AS(loyalty_decision(game, out_of_range), InvalidOffer);
}

TEST_CASE("internal violations and offers rank together") {
    const auto worth = three_service_table(2.5);
    const std::vector<CompetitorOffer> offers = {
        CompetitorOffer(Coalition::from_indices({0}), 2.0)};
    const LoyaltyReport report = loyalty_decision(worth, offers);
    REQUIRE(report.violations.size() == 4);
    // the offer's per-member worth 2 beats every internal pair at 1
    CHECK(report.violations[0].coalition == Coalition::from_indices({0}));
    CHECK(report.violations[0].per_member_worth == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(*report.partial_switch == Coalition::from_indices({0}));
}

TEST_CASE("deviation threshold scales the cooperative worth by s/n") {
    const CournotGame game(3, 10.0, 2.0);
    CHECK(deviation_threshold(game, 2) == doctest::Approx(32.0 / 3.0).epsilon(1e-12));
    CHECK(deviation_threshold(game, 3) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(deviation_threshold(CournotGame(4, 6.0, 2.0), 1) ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(deviation_threshold(game, 0), InvalidParameter);
    CHECK_THROWS_AS(deviation_threshold(game, 4), InvalidParameter);
    CHECK_THROWS_AS(deviation_threshold(CournotGame(3, 10.0, 2.0, 0.5), 2), InvalidParameter);

    // strictly increasing in s, grand worth at s = n
    const CournotGame wide(7, 13.0, 4.0);
    double previous = 0.0;
    for (int s = 1; s <= 7; ++s) {
        const double threshold = deviation_threshold(wide, s);
        CHECK(threshold > previous);
        previous = threshold;
    }
    CHECK(previous == doctest::Approx(cooperative_worth(wide)).epsilon(1e-12));
}

TEST_CASE("offers at the threshold stay, epsilon above it switch") {
    std::mt19937_64 rng(991);
    std::uniform_real_distribution<double> margin_dist(0.1, 100.0);
    std::uniform_real_distribution<double> cost_dist(0.0, 10.0);
    std::uniform_int_distribution<int> n_dist(1, 10);
    for (int round = 0; round < 100; ++round) {
        const int n = n_dist(rng);
        const double c = cost_dist(rng);
        const CournotGame game(n, c + margin_dist(rng), c);
        const int s = std::uniform_int_distribution<int>(1, n)(rng);
        const double threshold = deviation_threshold(game, s);

        const Coalition coalition((Coalition::mask_type{1} << s) - 1);
        const std::vector<CompetitorOffer> at = {CompetitorOffer(coalition, threshold)};
        CHECK(!loyalty_decision(game, at).partial_switch.has_value());

        const std::vector<CompetitorOffer> above = {
            CompetitorOffer(coalition, threshold * (1.0 + 1e-6))};
        CHECK(loyalty_decision(game, above).partial_switch.has_value());
    }
}

TEST_CASE("core check matches the exhaustive definition on random tables") {
    std::mt19937_64 rng(4242);
    for (int n = 2; n <= 4; ++n) {
        for (int round = 0; round < 250; ++round) {
            const auto worth = random_table(n, rng);
            const bool expected = oracle::core_nonempty_exhaustive(
                n, [&](std::uint32_t mask) { return worth(Coalition(mask)); });
            CHECK(core_nonempty(worth) == expected);
            CHECK(core_nonempty(worth) == find_violations(worth).empty());
        }
    }
}

TEST_CASE("raising the grand worth never breaks a non-empty core") {
    std::mt19937_64 rng(515151);
    std::uniform_real_distribution<double> bump_dist(0.0, 5.0);
    for (int round = 0; round < 200; ++round) {
        const int n = std::uniform_int_distribution<int>(2, 4)(rng);
        const auto worth = random_table(n, rng);
        if (!core_nonempty(worth)) continue;

        std::vector<std::pair<Coalition, double>> entries;
        const Coalition grand((Coalition::mask_type{1} << n) - 1);
        for (const Coalition& coalition : enumerate_coalitions(n)) {
            const double bump = (coalition == grand) ? bump_dist(rng) : 0.0;
            entries.emplace_back(coalition, worth(coalition) + bump);
        }
        CHECK(core_nonempty(CharacteristicFunction::from_table(n, entries)));
    }
}

TEST_CASE("loyalty is invariant under shifting a and c together") {
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> shift_dist(-1.5, 20.0);
    for (int round = 0; round < 100; ++round) {
        const CournotGame game(3, 10.0, 2.0);
        const double shift = std::max(shift_dist(rng), -1.9);  // keep c + k >= 0
        const CournotGame shifted(3, 10.0 + shift, 2.0 + shift);

        const std::vector<CompetitorOffer> offers = {
            CompetitorOffer(Coalition::from_indices({0, 1}),
                            std::uniform_real_distribution<double>(0.0, 20.0)(rng))};
        const LoyaltyReport base = loyalty_decision(game, offers);
        const LoyaltyReport moved = loyalty_decision(shifted, offers);
        CHECK(base.partial_switch == moved.partial_switch);
        CHECK(base.core_nonempty == moved.core_nonempty);
        CHECK(base.baseline == doctest::Approx(moved.baseline).epsilon(1e-9));
    }
}
