#include "rmod/restriction.hpp"

#include "rmod/module.hpp"

namespace rmod {

std::string to_string(RestrictionKind kind) {
    switch (kind) {
    case RestrictionKind::NoAdditionalInput: return "no_additional_input";
    case RestrictionKind::NoAdditionalOutput: return "no_additional_output";
    case RestrictionKind::NonOmitableInput: return "non_omitable_input";
    case RestrictionKind::NonOmitableOutput: return "non_omitable_output";
    case RestrictionKind::NonGrowable: return "non_growable";
    case RestrictionKind::NonShrinkable: return "non_shrinkable";
    }
    return {};
}

std::string Restriction::to_string() const {
    std::string out = rmod::to_string(kind);
    if (predicate) out += "(" + predicate->to_string() + ")";
    return out;
}

std::vector<RestrictionIssue> validate_restrictions(const Hierarchy& h, const std::string& module_id) {
    const RuleModule& m = h.module(module_id);
    ResolvedModule resolved = resolve(h, module_id);
    std::vector<RestrictionIssue> issues;
    for (const auto& r : m.restrictions_added) {
        if (!r.takes_predicate()) continue;
        const std::set<Predicate>& side =
            r.kind == RestrictionKind::NonOmitableInput ? resolved.inputs : resolved.outputs;
        if (!side.contains(*r.predicate)) {
            const char* which = r.kind == RestrictionKind::NonOmitableInput ? "inputs" : "outputs";
            issues.push_back({module_id, r,
                              "RestrictionTargetMissing: " + r.to_string() + " in module '" + module_id +
                                  "' names a predicate outside its resolved " + which});
        }
    }
    return issues;
}

std::set<Restriction> resolve_restrictions(const Hierarchy& h, const std::string& module_id) {
    std::set<Restriction> out;
    std::set<std::string> seen;
    const RuleModule* m = &h.module(module_id);
    while (true) {
        if (!seen.insert(m->id).second)
            throw ResolveError(ResolveError::Code::HierarchyCycle, module_id,
                               "inheritance cycle while resolving restrictions of '" + module_id + "'");
        for (const auto& r : m->restrictions_added) out.insert(r);
        if (!m->parent) break;
        m = &h.module(*m->parent);
    }
    return out;
}

std::vector<StructuralViolation> check_structural(const Hierarchy& h, const std::string& child_id) {
    const RuleModule& child = h.module(child_id);
    if (!child.parent) return {};
    std::set<Restriction> parent_restrictions = resolve_restrictions(h, *child.parent);

    std::vector<StructuralViolation> violations;
    for (const auto& r : parent_restrictions) {
        switch (r.kind) {
        case RestrictionKind::NoAdditionalInput:
            if (!child.inputs_added.empty())
                violations.push_back({child_id, r, child.inputs_added});
            break;
        case RestrictionKind::NonOmitableInput:
            if (child.inputs_removed.contains(*r.predicate))
                violations.push_back({child_id, r, {*r.predicate}});
            break;
        case RestrictionKind::NoAdditionalOutput:
            if (!child.outputs_added.empty())
                violations.push_back({child_id, r, child.outputs_added});
            break;
        case RestrictionKind::NonOmitableOutput:
            if (child.outputs_removed.contains(*r.predicate))
                violations.push_back({child_id, r, {*r.predicate}});
            break;
        case RestrictionKind::NonGrowable:
        case RestrictionKind::NonShrinkable:
            break;  // behavioral; checked by the execution comparison
        }
    }
    return violations;
}

} // namespace rmod
