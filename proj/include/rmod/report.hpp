#pragma once

#include "rmod/behavior.hpp"
#include "rmod/restriction.hpp"
#include "rmod/workspace.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rmod {

struct CheckOptions {
    bool structural = true;
    bool behavioral = true;
    std::optional<std::string> only_module;   // restrict to one non-root module
    /// Datasets for behavioral checks; empty means all workspace datasets.
    std::vector<Dataset> datasets;
    EvalOptions eval;
};

struct AbstractModuleWarning {
    std::string module;
    std::set<Predicate> abstract_predicates;
    bool leaf = false;   // abstract leaf modules should always be concrete

    bool operator==(const AbstractModuleWarning&) const = default;
};

/// Aggregated outcome of structural and behavioral conformance checks.
struct ConformanceReport {
    std::vector<std::string> checked_modules;
    std::vector<StructuralViolation> structural_violations;
    std::vector<BehavioralViolation> behavioral_violations;
    std::vector<AbstractModuleWarning> abstract_warnings;
    std::map<std::string, std::vector<std::string>> dataset_coverage;  // child -> datasets used
    std::map<std::string, std::set<Predicate>> not_comparable;         // child -> excluded outputs
    std::map<std::string, std::set<Predicate>> dropped_outputs;        // child -> parent outputs it dropped
    std::vector<std::string> errors;   // per-pair check errors (applicability etc.)
    double check_duration_seconds = 0;  // resolution + checks only
    double total_duration_seconds = 0;  // including process start-up, set by the CLI

    bool has_violations() const {
        return !structural_violations.empty() || !behavioral_violations.empty();
    }
};

ConformanceReport run_checks(const Workspace& ws, const CheckOptions& options = {});

enum class ReportFormat { Json, Text };

/// Stable output: modules, then violations sorted by module/predicate/kind.
/// JSON omits timings unless requested so that identical workspaces produce
/// byte-identical reports.
std::string emit_report(const ConformanceReport& report, ReportFormat format,
                        bool with_timings = false);

/// 0 = clean, 1 = violations, 2 = errors.
int report_exit_code(const ConformanceReport& report);

} // namespace rmod
