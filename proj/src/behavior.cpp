#include "rmod/behavior.hpp"

#include <algorithm>
#include <sstream>

namespace rmod {

std::string to_string(ChangeClass c) {
    switch (c) {
    case ChangeClass::Unchanged: return "unchanged";
    case ChangeClass::Grown: return "grown";
    case ChangeClass::Shrunk: return "shrunk";
    case ChangeClass::GrownAndShrunk: return "grown_and_shrunk";
    }
    return {};
}

namespace {

// Two-bit encoding {grew, shrank}; join is bitwise or.
int bits_of(ChangeClass c) {
    switch (c) {
    case ChangeClass::Unchanged: return 0;
    case ChangeClass::Grown: return 1;
    case ChangeClass::Shrunk: return 2;
    case ChangeClass::GrownAndShrunk: return 3;
    }
    return 0;
}

ChangeClass class_of(int bits) {
    switch (bits) {
    case 0: return ChangeClass::Unchanged;
    case 1: return ChangeClass::Grown;
    case 2: return ChangeClass::Shrunk;
    default: return ChangeClass::GrownAndShrunk;
    }
}

std::string joined(const std::set<Predicate>& preds) {
    std::ostringstream out;
    bool first = true;
    for (const auto& p : preds) {
        if (!first) out << ", ";
        out << p.to_string();
        first = false;
    }
    return out.str();
}

std::vector<Tuple> difference_sample(const std::set<Tuple>& from, const std::set<Tuple>& minus,
                                     std::size_t limit = 5) {
    std::vector<Tuple> out;
    for (const auto& t : from) {
        if (minus.contains(t)) continue;
        out.push_back(t);
        if (out.size() == limit) break;
    }
    return out;
}

} // namespace

ChangeClass join(ChangeClass a, ChangeClass b) {
    return class_of(bits_of(a) | bits_of(b));
}

bool is_applicable(const Dataset& d, const ResolvedModule& rm) {
    for (const auto& p : rm.inputs)
        if (!d.extensions.contains(p)) return false;
    return true;
}

ExecutionResult execute(const ResolvedModule& rm, const Dataset& d, const ExecOptions& options) {
    std::set<Predicate> missing;
    for (const auto& p : rm.inputs)
        if (!d.extensions.contains(p)) missing.insert(p);
    if (!missing.empty())
        throw ExecError(ExecError::Code::NotApplicable, rm.id, missing,
                        "dataset '" + d.name + "' is not applicable to module '" + rm.id +
                            "'; missing inputs: " + joined(missing));
    if (rm.is_abstract() && !options.allow_abstract)
        throw ExecError(ExecError::Code::AbstractModuleExecution, rm.id, rm.abstract_predicates,
                        "module '" + rm.id + "' is abstract (undefined: " +
                            joined(rm.abstract_predicates) + ") and refuses execution");

    Dataset restricted;
    restricted.name = d.name;
    for (const auto& p : rm.inputs)
        restricted.extensions[p] = d.extensions.at(p);

    auto derived = evaluate(rm.rule_vector(), restricted, options.eval);

    ExecutionResult result;
    result.module_id = rm.id;
    result.dataset_name = d.name;
    for (const auto& p : rm.outputs) {
        auto it = derived.find(p);
        result.outputs[p] = it == derived.end() ? std::set<Tuple>{} : it->second;
    }
    return result;
}

ChangeClass classify_change(const std::set<Tuple>& parent_facts, const std::set<Tuple>& child_facts) {
    if (parent_facts == child_facts) return ChangeClass::Unchanged;
    bool child_within_parent =
        std::includes(parent_facts.begin(), parent_facts.end(), child_facts.begin(), child_facts.end());
    if (child_within_parent) return ChangeClass::Shrunk;
    bool parent_within_child =
        std::includes(child_facts.begin(), child_facts.end(), parent_facts.begin(), parent_facts.end());
    if (parent_within_child) return ChangeClass::Grown;
    return ChangeClass::GrownAndShrunk;
}

BehavioralComparison detect_behavioral_modifications(const Hierarchy& h,
                                                     const std::string& parent_id,
                                                     const std::string& child_id,
                                                     const std::vector<Dataset>& datasets,
                                                     const EvalOptions& eval) {
    ResolvedModule parent = resolve(h, parent_id);
    ResolvedModule child = resolve(h, child_id);
    if (datasets.empty())
        throw ExecError(ExecError::Code::NoApplicableDatasets, child_id, {},
                        "no datasets supplied for the behavioral check of '" + child_id + "'");
    for (const auto& d : datasets) {
        for (const ResolvedModule* rm : {&parent, &child}) {
            std::set<Predicate> missing;
            for (const auto& p : rm->inputs)
                if (!d.extensions.contains(p)) missing.insert(p);
            if (!missing.empty())
                throw ExecError(ExecError::Code::NotApplicable, rm->id, missing,
                                "dataset '" + d.name + "' is not applicable to module '" + rm->id +
                                    "'; missing inputs: " + joined(missing));
        }
    }

    BehavioralComparison cmp;
    std::set<Predicate> parent_abstract = parent.abstract_predicates;
    std::set<Predicate> child_abstract = child.abstract_predicates;
    std::set<Predicate> considered;
    for (const auto& p : parent.outputs) {
        if (!child.outputs.contains(p)) {
            cmp.dropped_outputs.insert(p);
            continue;
        }
        if (parent_abstract.contains(p) || child_abstract.contains(p))
            cmp.not_comparable.insert(p);
        else
            considered.insert(p);
    }
    for (const auto& p : considered) cmp.classes[p] = ChangeClass::Unchanged;

    ExecOptions exec_opts;
    exec_opts.allow_abstract = true;  // only concrete predicates are compared
    exec_opts.eval = eval;
    for (const auto& d : datasets) {
        cmp.dataset_names.push_back(d.name);
        ExecutionResult pr = execute(parent, d, exec_opts);
        ExecutionResult cr = execute(child, d, exec_opts);
        for (const auto& p : considered) {
            const auto& pf = pr.outputs.at(p);
            const auto& cf = cr.outputs.at(p);
            ChangeClass cls = classify_change(pf, cf);
            cmp.classes[p] = join(cmp.classes[p], cls);
            if ((cls == ChangeClass::Grown || cls == ChangeClass::GrownAndShrunk) &&
                !cmp.first_growth.contains(p))
                cmp.first_growth[p] = {d.name, difference_sample(cf, pf)};
            if ((cls == ChangeClass::Shrunk || cls == ChangeClass::GrownAndShrunk) &&
                !cmp.first_shrink.contains(p))
                cmp.first_shrink[p] = {d.name, difference_sample(pf, cf)};
        }
    }
    return cmp;
}

std::vector<BehavioralViolation> check_behavioral(const Hierarchy& h,
                                                  const std::string& child_id,
                                                  const std::vector<Dataset>& datasets,
                                                  const EvalOptions& eval) {
    const RuleModule& child = h.module(child_id);
    if (!child.parent) return {};
    BehavioralComparison cmp = detect_behavioral_modifications(h, *child.parent, child_id, datasets, eval);
    return behavioral_violations(h, child_id, cmp);
}

std::vector<BehavioralViolation> behavioral_violations(const Hierarchy& h,
                                                       const std::string& child_id,
                                                       const BehavioralComparison& cmp) {
    const RuleModule& child = h.module(child_id);
    if (!child.parent) return {};
    std::set<Restriction> parent_restrictions = resolve_restrictions(h, *child.parent);

    std::vector<BehavioralViolation> violations;
    for (const auto& r : parent_restrictions) {
        if (r.kind != RestrictionKind::NonGrowable && r.kind != RestrictionKind::NonShrinkable)
            continue;
        auto it = cmp.classes.find(*r.predicate);
        if (it == cmp.classes.end()) continue;  // dropped or not comparable
        ChangeClass cls = it->second;
        if (r.kind == RestrictionKind::NonGrowable &&
            (cls == ChangeClass::Grown || cls == ChangeClass::GrownAndShrunk)) {
            const auto& w = cmp.first_growth.at(*r.predicate);
            violations.push_back({child_id, r, *r.predicate, cls, w.dataset, w.tuples});
        }
        if (r.kind == RestrictionKind::NonShrinkable &&
            (cls == ChangeClass::Shrunk || cls == ChangeClass::GrownAndShrunk)) {
            const auto& w = cmp.first_shrink.at(*r.predicate);
            violations.push_back({child_id, r, *r.predicate, cls, w.dataset, w.tuples});
        }
    }
    return violations;
}

} // namespace rmod
