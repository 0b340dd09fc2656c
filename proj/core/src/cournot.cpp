#include "resgame/cournot.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "resgame/errors.hpp"

namespace resgame {

namespace {

void require_homogeneous(const CournotGame& game, const char* operation) {
    if (game.differentiated()) {
        throw InvalidParameter(std::string(operation) + " applies to homogeneous games only");
    }
}

void require_differentiated(const CournotGame& game, const char* operation) {
    if (!game.differentiated()) {
        throw InvalidParameter(std::string(operation) +
                               " needs a game with a differentiation factor");
    }
}

// Profits under demand a - q_i - g * sum_{j != i} q_j, cost c per unit.
EquilibriumProfile make_profile(const CournotGame& game, std::vector<double> quantities,
                                EquilibriumProfile::Method method) {
    const double g = game.differentiation().value_or(1.0);
    const double total = std::accumulate(quantities.begin(), quantities.end(), 0.0);

    EquilibriumProfile profile;
    profile.method = method;
    profile.profits.reserve(quantities.size());
    for (double q : quantities) {
        const double price = game.environment_size() - q - g * (total - q) - game.unit_cost();
        profile.profits.push_back(price * q);
    }
    profile.quantities = std::move(quantities);
    profile.total_profit =
        std::accumulate(profile.profits.begin(), profile.profits.end(), 0.0);
    return profile;
}

// Gaussian elimination with partial pivoting; a is row-major n x n.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::fabs(a[row * n + col]) > std::fabs(a[pivot * n + col])) pivot = row;
        }
        if (a[pivot * n + col] == 0.0) {
            throw Error("singular first-order-condition system");
        }
        if (pivot != col) {
            for (std::size_t k = col; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = a[row * n + col] / a[col * n + col];
            if (factor == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[row * n + k] -= factor * a[col * n + k];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t row = n; row-- > 0;) {
        double sum = b[row];
        for (std::size_t k = row + 1; k < n; ++k) sum -= a[row * n + k] * x[k];
        x[row] = sum / a[row * n + row];
    }
    return x;
}

}  // namespace

EquilibriumProfile noncooperative_equilibrium(const CournotGame& game) {
    require_homogeneous(game, "noncooperative_equilibrium");
    const double q = game.margin() / (game.service_count() + 1);
    return make_profile(game,
                        std::vector<double>(static_cast<std::size_t>(game.service_count()), q),
                        EquilibriumProfile::Method::ClosedForm);
}

double cooperative_worth(const CournotGame& game) {
    require_homogeneous(game, "cooperative_worth");
    return game.margin() * game.margin() / 4.0;
}

double best_response(const CournotGame& game, double others_total) {
    if (!std::isfinite(others_total) || others_total < 0.0) {
        throw InvalidParameter("total quantity of the other services must be non-negative");
    }
    const double g = game.differentiation().value_or(1.0);
    return std::max(0.0, (game.margin() - g * others_total) / 2.0);
}

EquilibriumProfile iterate_best_response(const CournotGame& game, std::vector<double> initial,
                                         const IterationOptions& options) {
    const auto n = static_cast<std::size_t>(game.service_count());
    if (initial.size() != n) {
        throw InvalidParameter("initial point has " + std::to_string(initial.size()) +
                               " quantities for a game of " + std::to_string(n) + " services");
    }
    for (double q : initial) {
        if (!std::isfinite(q) || q < 0.0) {
            throw InvalidParameter("initial quantities must be finite and non-negative");
        }
    }
    if (!(options.damping > 0.0) || options.damping > 1.0) {
        throw InvalidParameter("damping must lie in (0, 1]");
    }
    if (!(options.tolerance > 0.0)) {
        throw InvalidParameter("tolerance must be positive");
    }
    if (options.max_iterations < 1) {
        throw InvalidParameter("iteration budget must be at least 1");
    }

    std::vector<double>& q = initial;
    double residual = 0.0;
    for (int sweep = 0; sweep < options.max_iterations; ++sweep) {
        double total = std::accumulate(q.begin(), q.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double reply = best_response(game, std::max(0.0, total - q[i]));
            const double next = q[i] + options.damping * (reply - q[i]);
            total += next - q[i];
            q[i] = next;
        }

        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double reply = best_response(game, std::max(0.0, total - q[i]));
            residual = std::max(residual, std::fabs(reply - q[i]));
        }
        if (residual <= options.tolerance) {
            return make_profile(game, std::move(q),
                                EquilibriumProfile::Method::BestResponseIteration);
        }
    }

    throw NoConvergence("best-response iteration did not reach tolerance " +
                            std::to_string(options.tolerance) + " within " +
                            std::to_string(options.max_iterations) +
                            " sweeps (residual " + std::to_string(residual) + ")",
                        std::move(q), residual);
}

EquilibriumProfile differentiated_equilibrium(const CournotGame& game) {
    require_differentiated(game, "differentiated_equilibrium");
    const auto n = static_cast<std::size_t>(game.service_count());
    const double g = *game.differentiation();

    // First-order conditions: 2 q_i + g * sum_{j != i} q_j = a - c.
    std::vector<double> a(n * n, g);
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 2.0;
    std::vector<double> rhs(n, game.margin());

    return make_profile(game, solve_dense(std::move(a), std::move(rhs)),
                        EquilibriumProfile::Method::LinearSolve);
}

double differentiated_cooperative_worth(const CournotGame& game) {
    require_differentiated(game, "differentiated_cooperative_worth");
    const double g = *game.differentiation();
    const double n = game.service_count();
    return n * game.margin() * game.margin() / (4.0 * (1.0 + g * (n - 1.0)));
}

}  // namespace resgame
