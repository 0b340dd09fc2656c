#include "resgame/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "resgame/errors.hpp"
#include "resgame/numeric.hpp"

namespace resgame {

namespace {

// Report values carry 12 significant digits: enough to reproduce every
// comparison made here without printing rounding noise.
std::string num(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

const char* method_name(EquilibriumProfile::Method method) {
    switch (method) {
        case EquilibriumProfile::Method::ClosedForm:
            return "closed_form";
        case EquilibriumProfile::Method::BestResponseIteration:
            return "best_response_iteration";
        case EquilibriumProfile::Method::LinearSolve:
            return "linear_solve";
    }
    return "unknown";
}

const char* kind_name(AnalysisKind kind) {
    switch (kind) {
        case AnalysisKind::Full:
            return "full";
        case AnalysisKind::Equilibrium:
            return "equilibrium";
        case AnalysisKind::CoreCheck:
            return "core-check";
        case AnalysisKind::Advise:
            return "advise";
    }
    return "unknown";
}

CharacteristicFunction user_worth_table(const Scenario& scenario) {
    if (scenario.worth_table) return *scenario.worth_table;
    return CharacteristicFunction::induced(*scenario.game);
}

void fill_equilibrium(Report& report) {
    const CournotGame& game = *report.scenario.game;
    if (game.differentiated()) {
        report.equilibrium = differentiated_equilibrium(game);
        report.grand_worth = differentiated_cooperative_worth(game);
    } else {
        report.equilibrium = noncooperative_equilibrium(game);
        report.grand_worth = cooperative_worth(game);
    }
    report.baseline = *report.grand_worth / game.service_count();
}

void fill_core(Report& report) {
    const Scenario& scenario = report.scenario;
    if (scenario.game) {
        const CournotGame& game = *scenario.game;
        report.grand_worth = game.differentiated() ? differentiated_cooperative_worth(game)
                                                   : cooperative_worth(game);
        report.loyalty = loyalty_decision(game, scenario.offers);
    } else {
        report.grand_worth = scenario.worth_table->grand_worth();
        report.loyalty = loyalty_decision(*scenario.worth_table, scenario.offers);
    }
    report.baseline = report.loyalty->baseline;
}

void fill_remediation(Report& report) {
    report.remediation = remediation_plan(*report.scenario.game, report.scenario.offers);
}

void fill_estimation_gap(Report& report) {
    report.estimation_gap =
        estimation_gap(*report.scenario.provider_estimates, user_worth_table(report.scenario));
}

void render_machine(std::ostringstream& out, const Report& report) {
    out << "format = resgame/1\n";
    out << "scenario_begin\n" << serialize_scenario(report.scenario) << "scenario_end\n";
    out << "name = " << report.scenario.name << '\n';
    out << "n = " << report.service_count << '\n';
    out << "mode = " << (report.parametric ? "parametric" : "table") << '\n';
    out << "analysis = " << kind_name(report.kind) << '\n';

    if (report.equilibrium) {
        const EquilibriumProfile& eq = *report.equilibrium;
        out << "equilibrium.method = " << method_name(eq.method) << '\n';
        for (std::size_t i = 0; i < eq.quantities.size(); ++i) {
            out << "equilibrium.q[" << i << "] = " << num(eq.quantities[i]) << '\n';
        }
        for (std::size_t i = 0; i < eq.profits.size(); ++i) {
            out << "equilibrium.pi[" << i << "] = " << num(eq.profits[i]) << '\n';
        }
        out << "equilibrium.total_profit = " << num(eq.total_profit) << '\n';
    }
    if (report.grand_worth) {
        out << "cooperative_worth = " << num(*report.grand_worth) << '\n';
    }
    if (report.baseline) {
        out << "baseline_per_member = " << num(*report.baseline) << '\n';
    }
    if (report.loyalty) {
        const LoyaltyReport& loyalty = *report.loyalty;
        out << "core_nonempty = " << (loyalty.core_nonempty ? "true" : "false") << '\n';
        out << "violations = " << loyalty.violations.size() << '\n';
        for (std::size_t i = 0; i < loyalty.violations.size(); ++i) {
            const CoreViolation& violation = loyalty.violations[i];
            out << "violations[" << i << "].set = " << to_string(violation.coalition) << '\n';
            out << "violations[" << i
                << "].per_member_worth = " << num(violation.per_member_worth) << '\n';
            out << "violations[" << i
                << "].per_member_baseline = " << num(violation.per_member_baseline) << '\n';
            out << "violations[" << i << "].surplus = " << num(violation.surplus) << '\n';
        }
        if (loyalty.partial_switch) {
            out << "recommendation = partial_switch\n";
            out << "recommendation.set = " << to_string(*loyalty.partial_switch) << '\n';
        } else {
            out << "recommendation = stay\n";
        }
    }
    if (report.remediation) {
        const RemediationPlan& plan = *report.remediation;
        out << "remediation.target_per_member = " << num(plan.target_per_member) << '\n';
        out << "remediation.current_ratio = " << num(plan.current_ratio) << '\n';
        if (plan.delta_c) {
            out << "remediation.delta_c = " << num(*plan.delta_c) << '\n';
            out << "remediation.cost_ceiling = " << num(*plan.cost_ceiling) << '\n';
        } else {
            out << "remediation.delta_c = infeasible\n";
        }
        out << "remediation.delta_a = " << num(plan.delta_a) << '\n';
        out << "remediation.market_floor = " << num(plan.market_floor) << '\n';
        if (plan.service_cap) {
            out << "remediation.n_max = " << *plan.service_cap << '\n';
        } else {
            out << "remediation.n_max = infeasible\n";
        }
    }
    if (report.estimation_gap) {
        const EstimationGapReport& gap = *report.estimation_gap;
        out << "estimation_gap.max_abs = " << num(gap.max_abs_gap) << '\n';
        out << "estimation_gap.worst_set = " << to_string(gap.worst_coalition) << '\n';
        std::size_t nonzero = 0;
        for (const auto& [coalition, delta] : gap.per_coalition_gaps) {
            if (std::fabs(delta) > kAbsTol) ++nonzero;
        }
        out << "estimation_gap.deltas = " << nonzero << '\n';
        std::size_t index = 0;
        for (const auto& [coalition, delta] : gap.per_coalition_gaps) {
            if (std::fabs(delta) <= kAbsTol) continue;
            out << "estimation_gap[" << index << "].set = " << to_string(coalition) << '\n';
            out << "estimation_gap[" << index << "].delta = " << num(delta) << '\n';
            ++index;
        }
    }
}

std::string pad(std::string text, std::size_t width) {
    if (text.size() < width) text.append(width - text.size(), ' ');
    return text;
}

void render_table(std::ostringstream& out, const Report& report) {
    const Scenario& scenario = report.scenario;
    out << "scenario: " << scenario.name << '\n';
    out << "services: " << report.service_count << '\n';
    if (report.parametric) {
        const CournotGame& game = *scenario.game;
        out << "model:    symmetric game (a = " << num(game.environment_size())
            << ", c = " << num(game.unit_cost());
        if (game.differentiated()) {
            out << ", gamma = " << num(*game.differentiation());
        }
        out << ")\n";
    } else {
        out << "model:    explicit worth table\n";
    }

    if (report.equilibrium) {
        const EquilibriumProfile& eq = *report.equilibrium;
        out << '\n';
        out << "equilibrium (" << method_name(eq.method) << "):\n";
        out << "  " << pad("play", 8) << pad("quantity", 18) << "profit\n";
        for (std::size_t i = 0; i < eq.quantities.size(); ++i) {
            out << "  " << pad(std::to_string(i), 8) << pad(num(eq.quantities[i]), 18)
                << num(eq.profits[i]) << '\n';
        }
        out << "  total profit: " << num(eq.total_profit) << '\n';
    }

    if (report.grand_worth) {
        out << '\n';
        out << "grand-coalition worth: " << num(*report.grand_worth) << '\n';
        out << "per-member baseline:   " << num(*report.baseline) << '\n';
    }

    if (report.loyalty) {
        const LoyaltyReport& loyalty = *report.loyalty;
        out << '\n';
        if (loyalty.core_nonempty) {
            out << "core check: non-empty (no coalition beats the per-member baseline)\n";
        } else {
            out << "core check: EMPTY (" << loyalty.violations.size()
                << " violating coalition" << (loyalty.violations.size() == 1 ? "" : "s")
                << ")\n";
        }
        if (!loyalty.violations.empty()) {
            out << "  " << pad("coalition", 12) << pad("per-member", 18) << pad("baseline", 18)
                << "surplus\n";
            for (const CoreViolation& violation : loyalty.violations) {
                out << "  " << pad(to_string(violation.coalition), 12)
                    << pad(num(violation.per_member_worth), 18)
                    << pad(num(violation.per_member_baseline), 18) << num(violation.surplus)
                    << '\n';
            }
        }
        out << "recommendation: ";
        if (loyalty.partial_switch) {
            out << "partially switch services " << to_string(*loyalty.partial_switch) << '\n';
        } else {
            out << "stay\n";
        }
    }

    if (report.remediation) {
        const RemediationPlan& plan = *report.remediation;
        out << '\n';
        out << "remediation (target per-member worth " << num(plan.target_per_member) << "):\n";
        out << "  current ratio:   " << num(plan.current_ratio) << '\n';
        if (plan.delta_c) {
            out << "  cost reduction:  delta_c = " << num(*plan.delta_c)
                << " (cost ceiling " << num(*plan.cost_ceiling) << ")\n";
        } else {
            out << "  cost reduction:  infeasible (would need a negative cost)\n";
        }
        out << "  market increase: delta_a = " << num(plan.delta_a) << " (market floor "
            << num(plan.market_floor) << ")\n";
        if (plan.service_cap) {
            out << "  service cap:     n_max = " << *plan.service_cap << '\n';
        } else {
            out << "  service cap:     infeasible (even one service falls short)\n";
        }
    }

    if (report.estimation_gap) {
        const EstimationGapReport& gap = *report.estimation_gap;
        out << '\n';
        out << "estimation gap (provider - user):\n";
        out << "  max |gap|: " << num(gap.max_abs_gap) << " at "
            << to_string(gap.worst_coalition) << '\n';
        for (const auto& [coalition, delta] : gap.per_coalition_gaps) {
            if (std::fabs(delta) <= kAbsTol) continue;
            out << "  " << pad(to_string(coalition), 12) << num(delta) << '\n';
        }
    }
}

}  // namespace

bool Report::has_infeasible_lever() const {
    return remediation && (!remediation->delta_c || !remediation->service_cap);
}

Report run_analysis(const Scenario& scenario, const AnalysisOptions& options) {
    scenario.validate();

    Report report;
    report.scenario = scenario;
    report.kind = options.kind;
    report.service_count = scenario.service_count();
    report.parametric = scenario.game.has_value();

    switch (options.kind) {
        case AnalysisKind::Equilibrium:
            if (!scenario.game) {
                throw ValidationError(
                    "equilibrium analysis needs a parametric scenario (a game block)");
            }
            fill_equilibrium(report);
            break;

        case AnalysisKind::CoreCheck: {
            if (scenario.game && scenario.game->differentiated()) {
                throw ValidationError(
                    "core checks need a worth table or a homogeneous game; a differentiated "
                    "game induces none");
            }
            const CharacteristicFunction worth = user_worth_table(scenario);
            report.grand_worth = worth.grand_worth();
            report.loyalty = loyalty_decision(worth, {});
            report.baseline = report.loyalty->baseline;
            break;
        }

        case AnalysisKind::Advise:
            if (!scenario.game) {
                throw ValidationError("advice needs a parametric scenario (a game block)");
            }
            if (scenario.game->differentiated()) {
                throw ValidationError(
                    "remediation levers are defined for homogeneous games only");
            }
            if (scenario.offers.empty()) {
                throw ValidationError("advice needs at least one competitor offer");
            }
            fill_remediation(report);
            break;

        case AnalysisKind::Full:
            if (scenario.game) fill_equilibrium(report);
            fill_core(report);
            if (scenario.game && !scenario.game->differentiated() && !scenario.offers.empty()) {
                fill_remediation(report);
            }
            if (scenario.provider_estimates) fill_estimation_gap(report);
            break;
    }
    return report;
}

std::string render_report(const Report& report, ReportFormat format) {
    std::ostringstream out;
    if (format == ReportFormat::Machine) {
        render_machine(out, report);
    } else {
        render_table(out, report);
    }
    return out.str();
}

}  // namespace resgame
