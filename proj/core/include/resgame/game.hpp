#pragma once

#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "resgame/errors.hpp"

namespace resgame {

// Core checks and explicit worth tables enumerate all 2^n - 1 non-empty
// coalitions; 24 services cap that at ~16.7M, which stays tractable.
inline constexpr int kMaxServices = 24;

/// Parameters of the symmetric quantity game played by a user's per-service
/// interactions: n services, environment size a (total data volume or time
/// the user can spend), and per-unit cost c of producing value. The optional
/// differentiation factor in [0, 1] controls how strongly services compete
/// for the same demand (1 = fully substitutable, 0 = independent).
class CournotGame {
public:
    CournotGame(int service_count, double environment_size, double unit_cost,
                std::optional<double> differentiation = std::nullopt);

    int service_count() const noexcept { return n_; }
    double environment_size() const noexcept { return a_; }
    double unit_cost() const noexcept { return c_; }
    std::optional<double> differentiation() const noexcept { return gamma_; }
    bool differentiated() const noexcept { return gamma_.has_value(); }

    /// The only combination the worth formulas depend on: a - c.
    double margin() const noexcept { return a_ - c_; }

    bool operator==(const CournotGame&) const = default;

private:
    int n_;
    double a_;
    double c_;
    std::optional<double> gamma_;
};

/// A non-empty subset of the service indices 0..n-1, stored as a bitmask.
class Coalition {
public:
    using mask_type = std::uint32_t;

    explicit Coalition(mask_type members);
    static Coalition from_indices(std::span<const int> indices);
    static Coalition from_indices(std::initializer_list<int> indices);

    mask_type members() const noexcept { return members_; }
    int size() const noexcept;
    bool contains(int service) const noexcept;

    /// Largest service index present; lets callers bound-check against n.
    int highest_service() const noexcept;

    /// Ascending list of member indices.
    std::vector<int> services() const;

    friend auto operator<=>(const Coalition&, const Coalition&) = default;

private:
    mask_type members_;
};

/// Renders a coalition as "{0,2,3}".
std::string to_string(const Coalition& coalition);

/// Lazy, ascending-by-bitmask view over the non-empty subsets of
/// {0..n-1}. Materializing all of them is deliberately avoided; at the
/// 24-service cap the full enumeration has ~16.7M elements.
class CoalitionRange {
public:
    class iterator {
    public:
        using value_type = Coalition;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;

        iterator() = default;
        explicit iterator(Coalition::mask_type mask) : mask_(mask) {}

        Coalition operator*() const { return Coalition(mask_); }
        iterator& operator++() noexcept {
            ++mask_;
            return *this;
        }
        iterator operator++(int) noexcept {
            iterator old = *this;
            ++mask_;
            return old;
        }
        friend bool operator==(const iterator&, const iterator&) = default;

    private:
        Coalition::mask_type mask_ = 1;
    };

    CoalitionRange(int service_count, bool proper_only);

    iterator begin() const noexcept { return iterator(1); }
    iterator end() const noexcept { return iterator(last_ + 1); }
    std::size_t size() const noexcept { return last_; }
    bool empty() const noexcept { return last_ == 0; }

    std::vector<Coalition> to_vector() const;

private:
    Coalition::mask_type last_;  // highest mask in the range; 0 means empty
};

/// All non-empty coalitions over service_count services in ascending bitmask
/// order; with proper_only the grand coalition is excluded.
CoalitionRange enumerate_coalitions(int service_count, bool proper_only = false);

/// Worth v(S) for every non-empty coalition of services. Three storage
/// modes: an explicit per-coalition table, a size-symmetric table (worth
/// depends only on |S|), or the table induced by a homogeneous CournotGame,
/// where a coalition's worth is the payoff of its services merged into one
/// player competing against the remaining independent ones:
///
///     v(S) = ((a - c) / (n - |S| + 2))^2
///
/// whose endpoints are the per-service payoff under no cooperation
/// (|S| = 1) and the fully cooperative worth (a - c)^2 / 4 (|S| = n).
class CharacteristicFunction {
public:
    enum class Mode { ExplicitTable, SizeSymmetric, InducedCournot };

    /// Builds an explicit table over all 2^n - 1 non-empty coalitions.
    /// Every coalition must appear exactly once.
    static CharacteristicFunction from_table(
        int service_count, std::span<const std::pair<Coalition, double>> entries);

    /// worth_by_size[k - 1] is the worth of any coalition of size k.
    static CharacteristicFunction size_symmetric(int service_count,
                                                 std::span<const double> worth_by_size);

    static CharacteristicFunction induced(const CournotGame& game);

    int service_count() const noexcept { return n_; }
    Mode mode() const noexcept { return mode_; }

    double operator()(const Coalition& coalition) const;
    double grand_worth() const;

    bool operator==(const CharacteristicFunction&) const = default;

private:
    CharacteristicFunction(Mode mode, int n, std::vector<double> worths,
                           std::optional<CournotGame> game)
        : mode_(mode), n_(n), worths_(std::move(worths)), game_(std::move(game)) {}

    Mode mode_;
    int n_;
    std::vector<double> worths_;  // per mask-1 (ExplicitTable) or per size-1 (SizeSymmetric)
    std::optional<CournotGame> game_;
};

/// A rival resource's offer: the coalition of services available there and
/// the total worth the user would earn from them.
struct CompetitorOffer {
    CompetitorOffer(Coalition coalition, double worth);

    Coalition coalition;
    double worth;

    bool operator==(const CompetitorOffer&) const = default;
};

}  // namespace resgame
