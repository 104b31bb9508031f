#include "rmod/behavior.hpp"
#include "rmod/report.hpp"
#include "rmod/workspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr const char* kVersion = "rmod 0.1.0";

rmod::EvalOptions eval_options_from_env() {
    rmod::EvalOptions opts;
    if (const char* cap = std::getenv("RMOD_DERIVATION_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(cap, &end, 10);
        if (end && *end == '\0' && v > 0) opts.max_derived_facts = v;
    }
    return opts;
}

int fail(const std::string& message) {
    std::cerr << "rmod: " << message << "\n";
    return 2;
}

std::string render_outputs_text(const rmod::ExecutionResult& result) {
    std::ostringstream out;
    for (const auto& [pred, tuples] : result.outputs) {
        for (const auto& t : tuples) {
            out << pred.name;
            if (!t.empty()) {
                out << "(";
                for (std::size_t i = 0; i < t.size(); ++i) {
                    if (i) out << ", ";
                    out << t[i].to_string();
                }
                out << ")";
            }
            out << ".\n";
        }
    }
    return out.str();
}

std::string render_outputs_json(const rmod::ExecutionResult& result) {
    nlohmann::json out;
    out["dataset"] = result.dataset_name;
    out["module"] = result.module_id;
    nlohmann::json facts = nlohmann::json::object();
    for (const auto& [pred, tuples] : result.outputs) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& t : tuples) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& v : t) row.push_back(v.to_string());
            arr.push_back(row);
        }
        facts[pred.to_string()] = arr;
    }
    out["outputs"] = facts;
    return out.dump(2) + "\n";
}

std::string render_info(const rmod::Hierarchy& h, const rmod::ResolvedModule& rm) {
    std::ostringstream out;
    out << "module: " << rm.id << "\n";
    const auto& m = h.module(rm.id);
    out << "parent: " << (m.parent ? *m.parent : std::string("(none)")) << "\n";
    auto list = [&](const char* label, const std::set<rmod::Predicate>& preds) {
        out << label << ":";
        for (const auto& p : preds) out << " " << p.to_string();
        out << "\n";
    };
    list("inputs", rm.inputs);
    list("outputs", rm.outputs);
    out << "restrictions:";
    for (const auto& r : rm.restrictions) out << " " << r.to_string();
    out << "\n";
    out << "rules:";
    for (const auto& [id, _] : rm.rules) out << " " << id;
    out << "\n";
    out << "abstract: " << (rm.is_abstract() ? "yes" : "no") << "\n";
    if (rm.is_abstract())
        list("abstract predicates", rm.abstract_predicates);
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    auto process_start = std::chrono::steady_clock::now();

    CLI::App app{"rule-module workspaces: resolution, execution, conformance checking"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string workspace_path;
    std::string module_id;
    std::string dataset_name;
    std::string data_dir;
    std::string format = "text";
    bool conform = false;
    bool allow_abstract = false;
    bool structural_only = false;
    bool behavioral_only = false;
    bool with_timings = false;

    auto* cmd_resolve = app.add_subcommand("resolve", "print a module with inheritance resolved");
    cmd_resolve->add_option("workspace", workspace_path)->required();
    cmd_resolve->add_option("--module", module_id)->required();

    auto* cmd_info = app.add_subcommand("info", "interfaces, restrictions, and abstractness of a module");
    cmd_info->add_option("workspace", workspace_path)->required();
    cmd_info->add_option("--module", module_id)->required();

    auto* cmd_run = app.add_subcommand("run", "execute a module on a workspace dataset");
    cmd_run->add_option("workspace", workspace_path)->required();
    cmd_run->add_option("--module", module_id)->required();
    cmd_run->add_option("--data", dataset_name, "dataset name")->required();
    cmd_run->add_flag("--conform", conform, "also check behavioral conformance against the parent");
    cmd_run->add_flag("--allow-abstract", allow_abstract, "execute even if the module is abstract");
    cmd_run->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* cmd_check = app.add_subcommand("check", "structural and behavioral conformance checks");
    cmd_check->add_option("workspace", workspace_path)->required();
    cmd_check->add_option("--module", module_id);
    cmd_check->add_flag("--structural", structural_only, "structural checks only");
    cmd_check->add_flag("--behavioral", behavioral_only, "behavioral checks only");
    cmd_check->add_option("--data", data_dir, "directory of datasets for behavioral checks");
    cmd_check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    cmd_check->add_flag("--timings", with_timings, "include timings in JSON output");

    CLI11_PARSE(app, argc, argv);

    rmod::EvalOptions eval = eval_options_from_env();

    try {
        rmod::Workspace ws = rmod::load_workspace(std::filesystem::path(workspace_path));

        if (cmd_resolve->parsed()) {
            std::cout << rmod::render_resolved(rmod::resolve(ws.hierarchy, module_id));
            return 0;
        }

        if (cmd_info->parsed()) {
            std::cout << render_info(ws.hierarchy, rmod::resolve(ws.hierarchy, module_id));
            return 0;
        }

        if (cmd_run->parsed()) {
            auto it = ws.datasets.find(dataset_name);
            if (it == ws.datasets.end())
                return fail("unknown dataset '" + dataset_name + "'");
            rmod::ResolvedModule rm = rmod::resolve(ws.hierarchy, module_id);
            rmod::ExecOptions opts;
            opts.allow_abstract = allow_abstract;
            opts.eval = eval;
            rmod::ExecutionResult result = rmod::execute(rm, it->second, opts);
            std::cout << (format == "json" ? render_outputs_json(result) : render_outputs_text(result));
            if (!conform)
                return 0;
            const auto& m = ws.hierarchy.module(module_id);
            if (!m.parent)
                return 0;  // nothing to conform to
            auto violations = rmod::check_behavioral(ws.hierarchy, module_id, {it->second}, eval);
            for (const auto& v : violations)
                std::cout << "behavioral violation: " << v.restriction.to_string() << " ("
                          << rmod::to_string(v.observed) << " on '" << v.witness_dataset << "')\n";
            return violations.empty() ? 0 : 1;
        }

        // check
        rmod::CheckOptions opts;
        opts.eval = eval;
        if (structural_only && !behavioral_only) opts.behavioral = false;
        if (behavioral_only && !structural_only) opts.structural = false;
        if (!module_id.empty()) {
            if (!ws.hierarchy.modules.contains(module_id))
                return fail("unknown module '" + module_id + "'");
            opts.only_module = module_id;
        }
        if (!data_dir.empty()) {
            namespace fs = std::filesystem;
            if (!fs::is_directory(data_dir))
                return fail("--data: not a directory: " + data_dir);
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(data_dir))
                if (entry.is_regular_file() && entry.path().extension() == ".facts")
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                std::ifstream in(f);
                std::ostringstream buf;
                buf << in.rdbuf();
                opts.datasets.push_back(rmod::parse_dataset(buf.str(), f.stem().string(), f.string()));
            }
        }
        rmod::ConformanceReport report = rmod::run_checks(ws, opts);
        report.total_duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - process_start).count();
        rmod::ReportFormat fmt = format == "json" ? rmod::ReportFormat::Json : rmod::ReportFormat::Text;
        std::cout << rmod::emit_report(report, fmt, with_timings);
        return rmod::report_exit_code(report);
    } catch (const rmod::WorkspaceError& e) {
        return fail(e.what());
    } catch (const rmod::ResolveError& e) {
        return fail(e.what());
    } catch (const rmod::ExecError& e) {
        return fail(e.what());
    } catch (const rmod::EvalError& e) {
        return fail(e.what());
    } catch (const rmod::ParseError& e) {
        return fail(e.what());
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}
