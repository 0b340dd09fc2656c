#pragma once

#include <vector>

#include "resgame/game.hpp"

namespace resgame {

/// Per-service quantities and profits at an equilibrium (or at a converged
/// iterate), together with the method that produced them.
struct EquilibriumProfile {
    enum class Method { ClosedForm, BestResponseIteration, LinearSolve };

    std::vector<double> quantities;
    std::vector<double> profits;
    double total_profit = 0.0;
    Method method = Method::ClosedForm;
};

/// Nash equilibrium of the homogeneous game in closed form:
/// q_i = (a - c) / (n + 1), profit_i = q_i^2.
EquilibriumProfile noncooperative_equilibrium(const CournotGame& game);

/// Worth produced when all services cooperate as one: (a - c)^2 / 4.
/// Independent of n. Homogeneous games only.
double cooperative_worth(const CournotGame& game);

/// Profit-maximizing quantity against a given total produced by the other
/// services, clamped at zero: max(0, (a - c - g * others_total) / 2), where
/// g is the game's differentiation factor (1 when absent).
double best_response(const CournotGame& game, double others_total);

struct IterationOptions {
    double damping = 0.5;
    double tolerance = 1e-10;
    int max_iterations = 10'000;
};

/// Damped best-response sweeps from a caller-supplied starting point.
/// Services are updated one at a time in index order, each moving a
/// `damping` fraction toward its current best response (sequential sweeps;
/// simultaneous damped updates are not a contraction once n exceeds ~6).
/// Stops when no quantity is further than `tolerance` from its best
/// response (max norm). Throws NoConvergence with the last iterate and
/// residual if the sweep budget runs out. Handles homogeneous and
/// differentiated demand alike.
EquilibriumProfile iterate_best_response(const CournotGame& game, std::vector<double> initial,
                                         const IterationOptions& options = {});

/// Equilibrium of the differentiated game by solving the n-by-n linear
/// first-order system 2 q_i + g * sum_{j != i} q_j = a - c with partial
/// pivoting. By symmetry the solution is q_i = (a - c) / (2 + g (n - 1)).
EquilibriumProfile differentiated_equilibrium(const CournotGame& game);

/// Maximum joint worth of the differentiated game over q >= 0:
/// n (a - c)^2 / (4 (1 + g (n - 1))). At g = 1 this reduces to the
/// homogeneous cooperative worth; at g = 0 the services are independent
/// monopolies and worths add.
double differentiated_cooperative_worth(const CournotGame& game);

}  // namespace resgame
