#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "resgame/game.hpp"

namespace resgame {

/// Per-member worth of full loyalty: (a - c)^2 / (4 n).
double average_satisfaction(const CournotGame& game);

/// Smallest cost reduction that lifts the satisfaction ratio to the best
/// per-member offer m: delta_c = max(0, c - (a - 2 sqrt(n m))). Empty when
/// that would require a negative cost.
std::optional<double> min_cost_reduction(const CournotGame& game,
                                         std::span<const CompetitorOffer> offers);

/// Smallest environment growth achieving the same: the target market size
/// is c + 2 sqrt(n m). Always feasible.
double min_market_increase(const CournotGame& game, std::span<const CompetitorOffer> offers);

/// Largest service count whose ratio still meets the best offer:
/// floor((a - c)^2 / (4 m)). Empty when even a single service falls short;
/// unconstrained (INT_MAX) when no offer has positive per-member worth.
std::optional<int> max_service_count(double environment_size, double unit_cost,
                                     std::span<const CompetitorOffer> offers);

/// One-lever-at-a-time remediation against a set of offers. Each lever is
/// computed independently; an empty optional marks an infeasible lever.
struct RemediationPlan {
    double target_per_member = 0.0;  // m, best offer worth per member
    double current_ratio = 0.0;      // (a - c)^2 / (4 n)

    std::optional<double> delta_c;
    std::optional<double> cost_ceiling;  // highest cost keeping the ratio at m
    double delta_a = 0.0;
    double market_floor = 0.0;  // smallest environment size keeping the ratio at m
    std::optional<int> service_cap;

    bool operator==(const RemediationPlan&) const = default;
};

RemediationPlan remediation_plan(const CournotGame& game, std::span<const CompetitorOffer> offers);

/// Signed differences between the provider's worth estimates and the
/// user's, over every non-empty coalition.
struct EstimationGapReport {
    double max_abs_gap = 0.0;
    Coalition worst_coalition;  // smallest bitmask attaining max_abs_gap
    std::vector<std::pair<Coalition, double>> per_coalition_gaps;  // ascending bitmask
};

EstimationGapReport estimation_gap(const CharacteristicFunction& provider_estimate,
                                   const CharacteristicFunction& user_worth);

}  // namespace resgame
