#include "resgame/game.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace resgame {

namespace {

void require_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw InvalidParameter(std::string(what) + " must be finite");
    }
}

}  // namespace

CournotGame::CournotGame(int service_count, double environment_size, double unit_cost,
                         std::optional<double> differentiation)
    : n_(service_count), a_(environment_size), c_(unit_cost), gamma_(differentiation) {
    if (n_ < 1) {
        throw InvalidParameter("service count must be at least 1, got " + std::to_string(n_));
    }
    require_finite(a_, "environment size");
    require_finite(c_, "unit cost");
    if (c_ < 0.0) {
        throw InvalidParameter("unit cost must be non-negative");
    }
    if (!(a_ > c_)) {
        throw InvalidParameter(
            "environment size must strictly exceed the unit cost; the game is degenerate "
            "otherwise");
    }
    if (gamma_) {
        require_finite(*gamma_, "differentiation factor");
        if (*gamma_ < 0.0 || *gamma_ > 1.0) {
            throw InvalidParameter("differentiation factor must lie in [0, 1]");
        }
    }
}

Coalition::Coalition(mask_type members) : members_(members) {
    if (members_ == 0) {
        throw InvalidParameter("a coalition must contain at least one service");
    }
}

Coalition Coalition::from_indices(std::span<const int> indices) {
    mask_type mask = 0;
    for (int index : indices) {
        if (index < 0 || index >= 32) {
            throw InvalidParameter("service index " + std::to_string(index) +
                                   " outside the representable range 0..31");
        }
        mask |= mask_type{1} << index;
    }
    return Coalition(mask);
}

Coalition Coalition::from_indices(std::initializer_list<int> indices) {
    return from_indices(std::span<const int>(indices.begin(), indices.size()));
}

int Coalition::size() const noexcept { return std::popcount(members_); }

bool Coalition::contains(int service) const noexcept {
    return service >= 0 && service < 32 && (members_ >> service & 1u) != 0;
}

int Coalition::highest_service() const noexcept { return std::bit_width(members_) - 1; }

std::vector<int> Coalition::services() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int i = 0; i <= highest_service(); ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

std::string to_string(const Coalition& coalition) {
    std::ostringstream oss;
    oss << '{';
    bool first = true;
    for (int service : coalition.services()) {
        if (!first) oss << ',';
        first = false;
        oss << service;
    }
    oss << '}';
    return oss.str();
}

CoalitionRange::CoalitionRange(int service_count, bool proper_only) {
    if (service_count < 1) {
        throw InvalidParameter("service count must be at least 1, got " +
                               std::to_string(service_count));
    }
    if (service_count > kMaxServices) {
        throw TooManyServices("coalition enumeration supports at most " +
                              std::to_string(kMaxServices) + " services, got " +
                              std::to_string(service_count));
    }
    const auto full = (Coalition::mask_type{1} << service_count) - 1;
    last_ = proper_only ? full - 1 : full;
}

std::vector<Coalition> CoalitionRange::to_vector() const {
    std::vector<Coalition> out;
    out.reserve(size());
    for (const Coalition& coalition : *this) {
        out.push_back(coalition);
    }
    return out;
}

CoalitionRange enumerate_coalitions(int service_count, bool proper_only) {
    return CoalitionRange(service_count, proper_only);
}

CharacteristicFunction CharacteristicFunction::from_table(
    int service_count, std::span<const std::pair<Coalition, double>> entries) {
    if (service_count < 1) {
        throw InvalidParameter("service count must be at least 1, got " +
                               std::to_string(service_count));
    }
    if (service_count > kMaxServices) {
        throw TooManyServices("explicit worth tables support at most " +
                              std::to_string(kMaxServices) + " services, got " +
                              std::to_string(service_count));
    }

    const std::size_t table_size = (std::size_t{1} << service_count) - 1;
    std::vector<double> worths(table_size, 0.0);
    std::vector<bool> seen(table_size, false);

    for (const auto& [coalition, worth] : entries) {
        if (coalition.highest_service() >= service_count) {
            throw InvalidParameter("coalition " + to_string(coalition) +
                                   " references a service index beyond the table's " +
                                   std::to_string(service_count) + " services");
        }
        require_finite(worth, "coalition worth");
        const std::size_t slot = coalition.members() - 1;
        if (seen[slot]) {
            throw DuplicateCoalition("coalition " + to_string(coalition) +
                                     " appears more than once");
        }
        seen[slot] = true;
        worths[slot] = worth;
    }

    for (std::size_t slot = 0; slot < table_size; ++slot) {
        if (!seen[slot]) {
            throw MissingCoalition(
                "no worth given for coalition " +
                to_string(Coalition(static_cast<Coalition::mask_type>(slot + 1))));
        }
    }

    return CharacteristicFunction(Mode::ExplicitTable, service_count, std::move(worths),
                                  std::nullopt);
}

CharacteristicFunction CharacteristicFunction::size_symmetric(
    int service_count, std::span<const double> worth_by_size) {
    if (service_count < 1) {
        throw InvalidParameter("service count must be at least 1, got " +
                               std::to_string(service_count));
    }
    if (static_cast<int>(worth_by_size.size()) != service_count) {
        throw InvalidParameter("expected one worth per coalition size 1.." +
                               std::to_string(service_count) + ", got " +
                               std::to_string(worth_by_size.size()) + " entries");
    }
    for (double worth : worth_by_size) {
        require_finite(worth, "coalition worth");
    }
    return CharacteristicFunction(Mode::SizeSymmetric, service_count,
                                  std::vector<double>(worth_by_size.begin(), worth_by_size.end()),
                                  std::nullopt);
}

CharacteristicFunction CharacteristicFunction::induced(const CournotGame& game) {
    if (game.differentiated()) {
        throw InvalidParameter(
            "induced worth tables are defined for homogeneous games only; the merged-player "
            "worth has no closed form under differentiated demand");
    }
    return CharacteristicFunction(Mode::InducedCournot, game.service_count(), {}, game);
}

double CharacteristicFunction::operator()(const Coalition& coalition) const {
    if (coalition.highest_service() >= n_) {
        throw InvalidParameter("coalition " + to_string(coalition) +
                               " references a service index beyond the table's " +
                               std::to_string(n_) + " services");
    }
    switch (mode_) {
        case Mode::ExplicitTable:
            return worths_[coalition.members() - 1];
        case Mode::SizeSymmetric:
            return worths_[static_cast<std::size_t>(coalition.size()) - 1];
        case Mode::InducedCournot: {
            // |S| services merged into one player against n - |S| independent
            // ones: n - |S| + 1 players, each earning (margin / (players + 1))^2.
            const double share = game_->margin() / (n_ - coalition.size() + 2);
            return share * share;
        }
    }
    throw Error("unreachable: unknown worth-table mode");
}

double CharacteristicFunction::grand_worth() const {
    return (*this)(Coalition((Coalition::mask_type{1} << n_) - 1));
}

CompetitorOffer::CompetitorOffer(Coalition coalition_, double worth_)
    : coalition(coalition_), worth(worth_) {
    require_finite(worth, "offer worth");
    if (worth < 0.0) {
        throw InvalidParameter("offer worth must be non-negative");
    }
}

}  // namespace resgame
