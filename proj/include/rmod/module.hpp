#pragma once

#include "rmod/restriction.hpp"
#include "rmod/rule.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmod {

/// A rule module in delta form: what it adds to and removes from its parent.
/// Root modules declare everything through their add sets and have empty
/// removal sets.
struct RuleModule {
    std::string id;
    std::optional<std::string> parent;
    std::vector<Rule> rules_added;           // unique ids within the module
    std::set<std::string> rules_removed;
    std::set<Predicate> inputs_added, inputs_removed;
    std::set<Predicate> outputs_added, outputs_removed;
    std::set<Restriction> restrictions_added;

    bool is_root() const { return !parent.has_value(); }
    bool operator==(const RuleModule& other) const;
};

/// Parent links must form a forest.
struct Hierarchy {
    std::map<std::string, RuleModule> modules;

    const RuleModule& module(const std::string& id) const;
    /// Direct children, sorted by id.
    std::vector<std::string> children_of(const std::string& id) const;
    bool is_leaf(const std::string& id) const { return children_of(id).empty(); }
};

struct HierarchyIssue {
    enum class Code { CycleDetected, UnknownParent, AddRemoveConflict, RootHasRemovals };
    Code code;
    std::string module;
    std::string detail;
    std::vector<std::string> cycle;  // for CycleDetected
};

std::string to_string(HierarchyIssue::Code code);

/// Fully inherited view of a module: R_m, I_m, O_m, S_m, P_m and its
/// abstract predicates. Immutable and safe to share across threads.
struct ResolvedModule {
    std::string id;
    std::map<std::string, Rule> rules;   // keyed by rule id
    std::set<Predicate> inputs, outputs;
    std::set<Restriction> restrictions;
    std::set<Predicate> predicates;            // P_m
    std::set<Predicate> abstract_predicates;

    bool is_abstract() const { return !abstract_predicates.empty(); }
    std::vector<Rule> rule_vector() const;

    bool operator==(const ResolvedModule&) const = default;
};

class ResolveError : public std::runtime_error {
public:
    enum class Code {
        UnknownModule,
        RemovedRuleNotInherited,
        RemovedInputNotInherited,
        RemovedOutputNotInherited,
        InterfaceOverlap,
        DuplicateRuleId,
        HierarchyCycle,
        AddRemoveConflict,
    };

    ResolveError(Code code, std::string module_id, std::string message)
        : std::runtime_error(std::move(message)), code_(code), module_(std::move(module_id)) {}

    Code code() const { return code_; }
    const std::string& module_id() const { return module_; }

private:
    Code code_;
    std::string module_;
};

/// Forest property, parent resolution, and per-module delta invariants.
/// Returns issues rather than throwing.
std::vector<HierarchyIssue> validate_hierarchy(const Hierarchy& h);

/// Applies (parent-resolved ∪ added) \ removed top-down along the parent
/// chain; restrictions accumulate by union. Throws ResolveError.
ResolvedModule resolve(const Hierarchy& h, const std::string& id);

/// dep_m edges: (p, p') iff some rule has p in the head and p' in the body.
std::set<std::pair<Predicate, Predicate>> dependency_graph(const ResolvedModule& rm);

/// A predicate is abstract when it is neither true/0 nor an input and no rule
/// of the module defines it. Concrete is the complement within P_m.
std::set<Predicate> abstract_predicates(const ResolvedModule& rm);
std::set<Predicate> concrete_predicates(const ResolvedModule& rm);

} // namespace rmod
