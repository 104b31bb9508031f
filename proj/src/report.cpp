#include "rmod/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <sstream>

namespace rmod {

ConformanceReport run_checks(const Workspace& ws, const CheckOptions& options) {
    auto started = std::chrono::steady_clock::now();
    ConformanceReport report;

    std::vector<std::string> targets;
    for (const auto& [id, m] : ws.hierarchy.modules) {
        if (m.is_root()) continue;
        if (options.only_module && id != *options.only_module) continue;
        targets.push_back(id);
    }
    report.checked_modules = targets;

    // Abstract-module reporting covers the whole hierarchy, not just targets.
    for (const auto& [id, _] : ws.hierarchy.modules) {
        ResolvedModule rm = resolve(ws.hierarchy, id);
        if (rm.is_abstract())
            report.abstract_warnings.push_back(
                {id, rm.abstract_predicates, ws.hierarchy.is_leaf(id)});
    }

    if (options.structural) {
        for (const auto& id : targets)
            for (auto& v : check_structural(ws.hierarchy, id))
                report.structural_violations.push_back(std::move(v));
    }

    if (options.behavioral) {
        std::vector<Dataset> datasets =
            options.datasets.empty() ? ws.dataset_vector() : options.datasets;
        if (datasets.empty() && !targets.empty())
            report.errors.push_back("behavioral checks need at least one dataset "
                                    "(none in the workspace and none via --data)");
        for (const auto& id : targets) {
            if (datasets.empty()) break;
            try {
                const RuleModule& child = ws.hierarchy.module(id);
                BehavioralComparison cmp =
                    detect_behavioral_modifications(ws.hierarchy, *child.parent, id, datasets, options.eval);
                for (auto& v : behavioral_violations(ws.hierarchy, id, cmp))
                    report.behavioral_violations.push_back(std::move(v));
                report.dataset_coverage[id] = cmp.dataset_names;
                if (!cmp.not_comparable.empty()) report.not_comparable[id] = cmp.not_comparable;
                if (!cmp.dropped_outputs.empty()) report.dropped_outputs[id] = cmp.dropped_outputs;
            } catch (const ExecError& e) {
                report.errors.push_back("behavioral check of '" + id + "': " + e.what());
            } catch (const EvalError& e) {
                report.errors.push_back("behavioral check of '" + id + "': " + e.what());
            }
        }
    }

    auto sort_key_s = [](const StructuralViolation& v) {
        return std::tuple(v.child, static_cast<int>(v.restriction.kind),
                          v.restriction.predicate.value_or(Predicate{}).to_string());
    };
    std::sort(report.structural_violations.begin(), report.structural_violations.end(),
              [&](const auto& a, const auto& b) { return sort_key_s(a) < sort_key_s(b); });
    auto sort_key_b = [](const BehavioralViolation& v) {
        return std::tuple(v.child, v.predicate.to_string(), static_cast<int>(v.restriction.kind));
    };
    std::sort(report.behavioral_violations.begin(), report.behavioral_violations.end(),
              [&](const auto& a, const auto& b) { return sort_key_b(a) < sort_key_b(b); });

    report.check_duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

namespace {

using nlohmann::json;

json tuples_json(const std::vector<Tuple>& tuples) {
    json arr = json::array();
    for (const auto& t : tuples) {
        json row = json::array();
        for (const auto& v : t) row.push_back(v.to_string());
        arr.push_back(row);
    }
    return arr;
}

json predicates_json(const std::set<Predicate>& preds) {
    json arr = json::array();
    for (const auto& p : preds) arr.push_back(p.to_string());
    return arr;
}

json report_json(const ConformanceReport& r, bool with_timings) {
    json out;  // nlohmann::json orders keys alphabetically: stable byte-for-byte
    out["checked_modules"] = r.checked_modules;

    json structural = json::array();
    for (const auto& v : r.structural_violations) {
        structural.push_back({
            {"child", v.child},
            {"evidence", predicates_json(v.evidence)},
            {"restriction", v.restriction.to_string()},
        });
    }
    out["structural_violations"] = structural;

    json behavioral = json::array();
    for (const auto& v : r.behavioral_violations) {
        behavioral.push_back({
            {"child", v.child},
            {"differing_tuples", tuples_json(v.witness_tuples)},
            {"observed", to_string(v.observed)},
            {"predicate", v.predicate.to_string()},
            {"restriction", v.restriction.to_string()},
            {"witness_dataset", v.witness_dataset},
        });
    }
    out["behavioral_violations"] = behavioral;

    json warnings = json::array();
    for (const auto& w : r.abstract_warnings) {
        warnings.push_back({
            {"abstract_predicates", predicates_json(w.abstract_predicates)},
            {"leaf", w.leaf},
            {"module", w.module},
        });
    }
    out["abstract_modules"] = warnings;

    out["dataset_coverage"] = r.dataset_coverage;
    json nc = json::object();
    for (const auto& [id, preds] : r.not_comparable) nc[id] = predicates_json(preds);
    out["not_comparable"] = nc;
    json dropped = json::object();
    for (const auto& [id, preds] : r.dropped_outputs) dropped[id] = predicates_json(preds);
    out["dropped_outputs"] = dropped;
    out["errors"] = r.errors;
    if (with_timings)
        out["timings"] = {
            {"check_seconds", r.check_duration_seconds},
            {"total_seconds", r.total_duration_seconds},
        };
    return out;
}

std::string report_text(const ConformanceReport& r) {
    std::ostringstream out;
    out << "checked modules:";
    for (const auto& id : r.checked_modules) out << " " << id;
    out << "\n";

    for (const auto& w : r.abstract_warnings) {
        out << "warning: module '" << w.module << "' is abstract (";
        bool first = true;
        for (const auto& p : w.abstract_predicates) {
            if (!first) out << ", ";
            out << p.to_string();
            first = false;
        }
        out << ")";
        if (w.leaf) out << " -- leaf modules should be concrete";
        out << "\n";
    }

    if (r.structural_violations.empty() && r.behavioral_violations.empty()) {
        out << "no violations\n";
    } else {
        for (const auto& v : r.structural_violations) {
            out << "structural violation: module '" << v.child << "' violates "
                << v.restriction.to_string() << " (";
            bool first = true;
            for (const auto& p : v.evidence) {
                if (!first) out << ", ";
                out << p.to_string();
                first = false;
            }
            out << ")\n";
        }
        for (const auto& v : r.behavioral_violations) {
            out << "behavioral violation: module '" << v.child << "' violates "
                << v.restriction.to_string() << ": " << v.predicate.to_string() << " "
                << to_string(v.observed) << " on dataset '" << v.witness_dataset << "'";
            if (!v.witness_tuples.empty()) {
                out << "; differing tuples:";
                for (const auto& t : v.witness_tuples) out << " " << to_string(t);
            }
            out << "\n";
        }
    }

    for (const auto& [child, datasets] : r.dataset_coverage) {
        out << "coverage: " << child << " checked against";
        for (const auto& d : datasets) out << " " << d;
        out << "\n";
    }
    for (const auto& [child, preds] : r.not_comparable) {
        out << "not comparable (abstract in parent or child): " << child << ":";
        for (const auto& p : preds) out << " " << p.to_string();
        out << "\n";
    }
    for (const auto& [child, preds] : r.dropped_outputs) {
        out << "outputs dropped by " << child << " (skipped by behavioral checks):";
        for (const auto& p : preds) out << " " << p.to_string();
        out << "\n";
    }
    for (const auto& e : r.errors) out << "error: " << e << "\n";
    out << "checks took " << r.check_duration_seconds << " s";
    if (r.total_duration_seconds > 0)
        out << " (" << r.total_duration_seconds << " s including start-up)";
    out << "\n";
    return out.str();
}

} // namespace

std::string emit_report(const ConformanceReport& report, ReportFormat format, bool with_timings) {
    if (format == ReportFormat::Json)
        return report_json(report, with_timings).dump(2) + "\n";
    return report_text(report);
}

int report_exit_code(const ConformanceReport& report) {
    if (!report.errors.empty()) return 2;
    return report.has_violations() ? 1 : 0;
}

} // namespace rmod
