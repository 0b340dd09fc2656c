#pragma once

#include <optional>
#include <string>

#include "resgame/core_analysis.hpp"
#include "resgame/cournot.hpp"
#include "resgame/provider.hpp"
#include "resgame/scenario.hpp"

namespace resgame {

enum class AnalysisKind { Full, Equilibrium, CoreCheck, Advise };

struct AnalysisOptions {
    AnalysisKind kind = AnalysisKind::Full;
};

/// Everything one analysis run produced. Sections not requested (or not
/// applicable to the scenario) stay empty. The input scenario is carried
/// along so reports can be reproduced from their own rendering.
struct Report {
    Scenario scenario;
    AnalysisKind kind = AnalysisKind::Full;
    int service_count = 0;
    bool parametric = false;

    std::optional<EquilibriumProfile> equilibrium;
    std::optional<double> grand_worth;  // v(N)
    std::optional<double> baseline;     // v(N) / n
    std::optional<LoyaltyReport> loyalty;
    std::optional<RemediationPlan> remediation;
    std::optional<EstimationGapReport> estimation_gap;

    /// True when any remediation lever came back infeasible.
    bool has_infeasible_lever() const;
};

/// Runs the requested analysis over a validated scenario. Deterministic:
/// equal inputs produce equal reports.
Report run_analysis(const Scenario& scenario, const AnalysisOptions& options = {});

enum class ReportFormat { Table, Machine };

/// Renders a report. `Table` is aligned human-readable text. `Machine` is
/// a stable `key = value` serialization with 12-significant-digit numbers,
/// carrying the scenario itself between `scenario_begin`/`scenario_end`
/// marker lines. Both renderings are byte-deterministic.
std::string render_report(const Report& report, ReportFormat format);

}  // namespace resgame
