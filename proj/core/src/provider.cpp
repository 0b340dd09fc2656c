#include "resgame/provider.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "resgame/errors.hpp"
#include "resgame/numeric.hpp"

namespace resgame {

namespace {

void require_homogeneous(const CournotGame& game, const char* operation) {
    if (game.differentiated()) {
        throw InvalidParameter(std::string(operation) + " applies to homogeneous games only");
    }
}

void require_offers_in_range(std::span<const CompetitorOffer> offers, int service_count) {
    for (const CompetitorOffer& offer : offers) {
        if (offer.coalition.highest_service() >= service_count) {
            throw InvalidOffer("offer on " + to_string(offer.coalition) +
                               " references a service index beyond the resource's " +
                               std::to_string(service_count) + " services");
        }
    }
}

// The binding constraint: the best per-member worth across all offers.
double best_offer_per_member(std::span<const CompetitorOffer> offers) {
    if (offers.empty()) {
        throw InvalidParameter("at least one competitor offer is required");
    }
    double best = 0.0;
    for (const CompetitorOffer& offer : offers) {
        best = std::max(best, offer.worth / offer.coalition.size());
    }
    return best;
}

double ratio_at(double margin, double service_count) {
    return margin * margin / (4.0 * service_count);
}

}  // namespace

double average_satisfaction(const CournotGame& game) {
    require_homogeneous(game, "average_satisfaction");
    return ratio_at(game.margin(), game.service_count());
}

std::optional<double> min_cost_reduction(const CournotGame& game,
                                         std::span<const CompetitorOffer> offers) {
    require_homogeneous(game, "min_cost_reduction");
    require_offers_in_range(offers, game.service_count());
    const double target = best_offer_per_member(offers);
    if (approx_geq(average_satisfaction(game), target)) return 0.0;

    const double ceiling =
        game.environment_size() - 2.0 * std::sqrt(game.service_count() * target);
    if (ceiling < 0.0 && !approx_equal(ceiling, 0.0)) return std::nullopt;
    return game.unit_cost() - std::max(ceiling, 0.0);
}

double min_market_increase(const CournotGame& game, std::span<const CompetitorOffer> offers) {
    require_homogeneous(game, "min_market_increase");
    require_offers_in_range(offers, game.service_count());
    const double target = best_offer_per_member(offers);
    if (approx_geq(average_satisfaction(game), target)) return 0.0;

    const double floor = game.unit_cost() + 2.0 * std::sqrt(game.service_count() * target);
    return floor - game.environment_size();
}

std::optional<int> max_service_count(double environment_size, double unit_cost,
                                     std::span<const CompetitorOffer> offers) {
    if (!std::isfinite(environment_size) || !std::isfinite(unit_cost) ||
        !(environment_size > unit_cost)) {
        throw InvalidParameter("environment size must strictly exceed the unit cost");
    }
    const double target = best_offer_per_member(offers);
    const double margin = environment_size - unit_cost;
    if (target <= 0.0) return std::numeric_limits<int>::max();

    const double bound = margin * margin / (4.0 * target);
    if (bound >= static_cast<double>(std::numeric_limits<int>::max())) {
        return std::numeric_limits<int>::max();
    }
    int count = static_cast<int>(std::floor(bound));
    // floor can land one short when the quotient is an integer up to rounding
    if (approx_geq(ratio_at(margin, count + 1), target)) ++count;
    if (count < 1) return std::nullopt;
    return count;
}

RemediationPlan remediation_plan(const CournotGame& game,
                                 std::span<const CompetitorOffer> offers) {
    require_homogeneous(game, "remediation_plan");
    require_offers_in_range(offers, game.service_count());

    RemediationPlan plan;
    plan.target_per_member = best_offer_per_member(offers);
    plan.current_ratio = average_satisfaction(game);

    const double root = 2.0 * std::sqrt(game.service_count() * plan.target_per_member);
    plan.delta_c = min_cost_reduction(game, offers);
    if (plan.delta_c) {
        plan.cost_ceiling = std::max(game.environment_size() - root, 0.0);
    }
    plan.delta_a = min_market_increase(game, offers);
    plan.market_floor = game.unit_cost() + root;
    plan.service_cap = max_service_count(game.environment_size(), game.unit_cost(), offers);
    return plan;
}

EstimationGapReport estimation_gap(const CharacteristicFunction& provider_estimate,
                                   const CharacteristicFunction& user_worth) {
    const int n = user_worth.service_count();
    if (provider_estimate.service_count() != n) {
        throw DimensionMismatch("provider estimates cover " +
                                std::to_string(provider_estimate.service_count()) +
                                " services but the user's worth table covers " +
                                std::to_string(n));
    }
    if (n > kMaxServices) {
        throw TooManyServices("estimation gaps enumerate every coalition and support at most " +
                              std::to_string(kMaxServices) + " services");
    }

    EstimationGapReport report{0.0, Coalition(1), {}};
    report.per_coalition_gaps.reserve((std::size_t{1} << n) - 1);
    for (const Coalition& coalition : enumerate_coalitions(n)) {
        const double gap = provider_estimate(coalition) - user_worth(coalition);
        report.per_coalition_gaps.emplace_back(coalition, gap);
        if (std::fabs(gap) > report.max_abs_gap) {
            report.max_abs_gap = std::fabs(gap);
            report.worst_coalition = coalition;
        }
    }
    return report;
}

}  // namespace resgame
