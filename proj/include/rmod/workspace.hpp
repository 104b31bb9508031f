#pragma once

#include "rmod/dataset.hpp"
#include "rmod/module.hpp"
#include "rmod/parser.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmod {

/// A loaded directory of module (.rmod) and dataset (.facts) files.
struct Workspace {
    Hierarchy hierarchy;
    std::map<std::string, Dataset> datasets;
    std::map<std::string, SourcePos> module_locations;
    std::map<std::string, SourcePos> dataset_locations;

    std::vector<Dataset> dataset_vector() const;
};

/// All the problems found while loading a workspace, each with a position.
class WorkspaceError : public std::runtime_error {
public:
    explicit WorkspaceError(std::vector<std::string> diagnostics)
        : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    static std::string join(const std::vector<std::string>& ds);
    std::vector<std::string> diagnostics_;
};

/// Parses one module declaration:
///   module ID [extends ID] { input {...} output {...} restrict {...} rules {...} }
RuleModule parse_module_file(std::string_view text, const std::string& file = "<module>");

/// Canonical delta-form source; parse_module_file(render_module(m)) == m.
std::string render_module(const RuleModule& m);

/// Self-contained module file: no parent link, full rule set, full interfaces,
/// full restriction set. Parsing it back and resolving yields an equal module.
std::string render_resolved(const ResolvedModule& rm);

/// Loads every .rmod/.facts file under the given paths (directories are
/// scanned non-recursively; files are taken as-is), validates the hierarchy
/// and all restriction declarations, and resolves every module once.
/// Throws WorkspaceError with aggregated diagnostics.
Workspace load_workspace(const std::vector<std::filesystem::path>& paths);
Workspace load_workspace(const std::filesystem::path& path);

} // namespace rmod
