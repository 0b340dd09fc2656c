#pragma once

#include <optional>
#include <span>
#include <vector>

#include "resgame/cournot.hpp"
#include "resgame/game.hpp"

namespace resgame {

/// A coalition whose members earn strictly more per service than the
/// grand-coalition average.
struct CoreViolation {
    Coalition coalition;
    double per_member_worth;     // v(S) / |S|
    double per_member_baseline;  // v(N) / n
    double surplus;              // difference, > 0

    bool operator==(const CoreViolation&) const = default;
};

/// Outcome of the stay-or-switch analysis. `partial_switch` is empty when
/// staying fully loyal is the best option, otherwise it names the coalition
/// heading the violation ranking.
struct LoyaltyReport {
    bool core_nonempty = true;
    double baseline = 0.0;  // v(N) / n
    std::vector<CoreViolation> violations;
    std::optional<Coalition> partial_switch;
};

/// True when no non-empty proper coalition beats the per-member baseline:
/// v(S)/|S| <= v(N)/n for all S. Ties within tolerance count as satisfied.
bool core_nonempty(const CharacteristicFunction& worth);

/// Every strictly violating proper coalition, ordered by descending
/// surplus, then smaller size, then ascending bitmask.
std::vector<CoreViolation> find_violations(const CharacteristicFunction& worth);

/// Stay/partial-switch decision against a set of competitor offers. The
/// baseline is v(N)/n of the given table; the table's own violating
/// coalitions and the offers (at worth/|S| per member) are ranked together.
LoyaltyReport loyalty_decision(const CharacteristicFunction& worth,
                               std::span<const CompetitorOffer> offers);

/// Same, with the baseline taken from the game's cooperative worth. For a
/// differentiated game only the offers are evaluated.
LoyaltyReport loyalty_decision(const CournotGame& game, std::span<const CompetitorOffer> offers);

/// Smallest external worth on s services that makes leaving attractive:
/// s (a - c)^2 / (4 n). An offer strictly above it triggers a partial
/// switch; one at or below it does not. Homogeneous games only.
double deviation_threshold(const CournotGame& game, int coalition_size);

}  // namespace resgame
