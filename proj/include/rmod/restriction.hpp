#pragma once

#include "rmod/rule.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rmod {

struct Hierarchy;

enum class RestrictionKind {
    NoAdditionalInput,
    NoAdditionalOutput,
    NonOmitableInput,
    NonOmitableOutput,
    NonGrowable,
    NonShrinkable,
};

std::string to_string(RestrictionKind kind);

/// One modification restriction. The first two kinds take no predicate; the
/// last four require one (validated against the declaring module's resolved
/// interfaces by validate_restrictions).
struct Restriction {
    RestrictionKind kind;
    std::optional<Predicate> predicate;

    auto operator<=>(const Restriction&) const = default;
    std::string to_string() const;

    static Restriction no_additional_input() { return {RestrictionKind::NoAdditionalInput, std::nullopt}; }
    static Restriction no_additional_output() { return {RestrictionKind::NoAdditionalOutput, std::nullopt}; }
    static Restriction non_omitable_input(Predicate p) { return {RestrictionKind::NonOmitableInput, std::move(p)}; }
    static Restriction non_omitable_output(Predicate p) { return {RestrictionKind::NonOmitableOutput, std::move(p)}; }
    static Restriction non_growable(Predicate p) { return {RestrictionKind::NonGrowable, std::move(p)}; }
    static Restriction non_shrinkable(Predicate p) { return {RestrictionKind::NonShrinkable, std::move(p)}; }

    bool takes_predicate() const {
        return kind != RestrictionKind::NoAdditionalInput && kind != RestrictionKind::NoAdditionalOutput;
    }
};

/// A structural-conformance failure of a child delta against a parent restriction.
struct StructuralViolation {
    std::string child;
    Restriction restriction;
    std::set<Predicate> evidence;  // the offending predicate(s); never empty

    bool operator==(const StructuralViolation&) const = default;
};

struct RestrictionIssue {
    std::string module;
    Restriction restriction;
    std::string message;  // "RestrictionTargetMissing: ..."
};

/// Every predicate-bearing restriction declared by the module must name a
/// predicate on the right side of its resolved interface.
std::vector<RestrictionIssue> validate_restrictions(const Hierarchy& h, const std::string& module_id);

/// S_m: union of declared restrictions along the whole parent chain.
/// Inherited restrictions cannot be removed.
std::set<Restriction> resolve_restrictions(const Hierarchy& h, const std::string& module_id);

/// Checks the child's declared deltas against the parent's *resolved*
/// restriction set. Violations are data, not errors; collected exhaustively.
std::vector<StructuralViolation> check_structural(const Hierarchy& h, const std::string& child_id);

} // namespace rmod
