#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resgame/game.hpp"

namespace resgame {

/// One analysis case: a baseline worth model (exactly one of `game` or
/// `worth_table`), competitor offers, and optionally the provider's own
/// worth estimates.
///
/// Scenario files are line-oriented text. `#` starts a comment, blank
/// lines are skipped, and blocks open with `key {` and close with `}` on
/// its own line:
///
///     name streaming_bundle
///     game {
///       n 3
///       a 10
///       c 2
///       gamma 0.5        # optional
///     }
///     offer {            # repeatable
///       set {0, 1}
///       worth 12
///     }
///
/// An explicit worth model replaces the game block:
///
///     worths {
///       n 3
///       size 1 = 0       # every coalition of one service
///       set {0, 1} = 2   # a single coalition
///       ...
///     }
///
/// `size` entries define all coalitions of that size at once; `set`
/// entries one coalition (indices ascending, zero-based). Together they
/// must cover each non-empty coalition exactly once; a block using only
/// `size` lines for sizes 1..n is stored size-symmetrically.
/// `provider_worths { ... }` follows the same rules as `worths`.
struct Scenario {
    std::string name;
    std::optional<CournotGame> game;
    std::optional<CharacteristicFunction> worth_table;
    std::vector<CompetitorOffer> offers;
    std::optional<CharacteristicFunction> provider_estimates;

    int service_count() const;

    /// Enforces the cross-field rules (exactly one baseline, offers and
    /// estimates within range, service cap). Throws ValidationError.
    void validate() const;

    bool operator==(const Scenario&) const = default;
};

/// Parses scenario text. `origin` names the source in error messages.
/// Throws ParseError for syntax problems (with a 1-based line number) and
/// ValidationError for semantic ones.
Scenario parse_scenario(std::string_view text, std::string_view origin = "<input>");

/// Reads and parses a scenario file; "-" reads standard input.
Scenario parse_scenario_file(const std::string& path);

/// Canonical text form; parsing it reproduces the scenario exactly
/// (numbers are written with shortest-round-trip precision).
std::string serialize_scenario(const Scenario& scenario);

}  // namespace resgame
