#include "resgame/core_analysis.hpp"

#include <algorithm>
#include <string>

#include "resgame/errors.hpp"
#include "resgame/numeric.hpp"

namespace resgame {

namespace {

void require_enumerable(int service_count) {
    if (service_count > kMaxServices) {
        throw TooManyServices("core checks enumerate every coalition and support at most " +
                              std::to_string(kMaxServices) + " services, got " +
                              std::to_string(service_count));
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

// Descending surplus, then smaller coalitions, then ascending bitmask.
bool violation_before(const CoreViolation& lhs, const CoreViolation& rhs) {
    if (lhs.surplus != rhs.surplus) return lhs.surplus > rhs.surplus;
    if (lhs.coalition.size() != rhs.coalition.size()) {
        return lhs.coalition.size() < rhs.coalition.size();
    }
    return lhs.coalition.members() < rhs.coalition.members();
}

LoyaltyReport decide(double baseline, std::vector<CoreViolation> violations) {
    std::stable_sort(violations.begin(), violations.end(), violation_before);
    LoyaltyReport report;
    report.baseline = baseline;
    report.core_nonempty = violations.empty();
    if (!violations.empty()) {
        report.partial_switch = violations.front().coalition;
    }
    report.violations = std::move(violations);
    return report;
}

std::vector<CoreViolation> offer_violations(std::span<const CompetitorOffer> offers,
                                            double baseline) {
    std::vector<CoreViolation> out;
    for (const CompetitorOffer& offer : offers) {
        const double per_member = offer.worth / offer.coalition.size();
        if (exceeds(per_member, baseline)) {
            out.push_back({offer.coalition, per_member, baseline, per_member - baseline});
        }
    }
    return out;
}

}  // namespace

bool core_nonempty(const CharacteristicFunction& worth) {
    const int n = worth.service_count();
    require_enumerable(n);
    if (n == 1) return true;  // no proper coalitions to deviate with

    const double baseline = worth.grand_worth() / n;
    for (const Coalition& coalition : enumerate_coalitions(n, /*proper_only=*/true)) {
        if (exceeds(worth(coalition) / coalition.size(), baseline)) return false;
    }
    return true;
}

std::vector<CoreViolation> find_violations(const CharacteristicFunction& worth) {
    const int n = worth.service_count();
    require_enumerable(n);
    const double baseline = worth.grand_worth() / n;

    std::vector<CoreViolation> violations;
    if (n > 1) {
        for (const Coalition& coalition : enumerate_coalitions(n, /*proper_only=*/true)) {
            const double per_member = worth(coalition) / coalition.size();
            if (exceeds(per_member, baseline)) {
                violations.push_back({coalition, per_member, baseline, per_member - baseline});
            }
        }
    }
    std::stable_sort(violations.begin(), violations.end(), violation_before);
    return violations;
}

LoyaltyReport loyalty_decision(const CharacteristicFunction& worth,
                               std::span<const CompetitorOffer> offers) {
    const int n = worth.service_count();
    require_enumerable(n);
    require_offers_in_range(offers, n);

    const double baseline = worth.grand_worth() / n;
    std::vector<CoreViolation> violations = find_violations(worth);
    std::vector<CoreViolation> from_offers = offer_violations(offers, baseline);
    violations.insert(violations.end(), from_offers.begin(), from_offers.end());
    return decide(baseline, std::move(violations));
}

LoyaltyReport loyalty_decision(const CournotGame& game, std::span<const CompetitorOffer> offers) {
    require_offers_in_range(offers, game.service_count());

    if (!game.differentiated()) {
        return loyalty_decision(CharacteristicFunction::induced(game), offers);
    }

    // Differentiated demand has no induced table; only the offers can beat
    // the cooperative average.
    const double baseline =
        differentiated_cooperative_worth(game) / game.service_count();
    return decide(baseline, offer_violations(offers, baseline));
}

double deviation_threshold(const CournotGame& game, int coalition_size) {
    if (game.differentiated()) {
        throw InvalidParameter("deviation_threshold applies to homogeneous games only");
    }
    if (coalition_size < 1 || coalition_size > game.service_count()) {
        throw InvalidParameter("coalition size " + std::to_string(coalition_size) +
                               " outside 1.." + std::to_string(game.service_count()));
    }
    return coalition_size * game.margin() * game.margin() / (4.0 * game.service_count());
}

}  // namespace resgame
