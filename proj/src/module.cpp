#include "rmod/module.hpp"

#include <algorithm>
#include <sstream>

namespace rmod {

namespace {

std::map<std::string, const Rule*> rules_by_id(const std::vector<Rule>& rules) {
    std::map<std::string, const Rule*> out;
    for (const auto& r : rules) out.emplace(r.id, &r);
    return out;
}

} // namespace

bool RuleModule::operator==(const RuleModule& other) const {
    auto sorted = [](std::vector<Rule> rs) {
        std::sort(rs.begin(), rs.end(), [](const Rule& a, const Rule& b) { return a.id < b.id; });
        return rs;
    };
    return id == other.id && parent == other.parent &&
           sorted(rules_added) == sorted(other.rules_added) &&
           rules_removed == other.rules_removed &&
           inputs_added == other.inputs_added && inputs_removed == other.inputs_removed &&
           outputs_added == other.outputs_added && outputs_removed == other.outputs_removed &&
           restrictions_added == other.restrictions_added;
}

const RuleModule& Hierarchy::module(const std::string& id) const {
    auto it = modules.find(id);
    if (it == modules.end())
        throw ResolveError(ResolveError::Code::UnknownModule, id, "unknown module '" + id + "'");
    return it->second;
}

std::vector<std::string> Hierarchy::children_of(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& [mid, m] : modules)
        if (m.parent == id) out.push_back(mid);
    return out;
}

std::string to_string(HierarchyIssue::Code code) {
    switch (code) {
    case HierarchyIssue::Code::CycleDetected: return "CycleDetected";
    case HierarchyIssue::Code::UnknownParent: return "UnknownParent";
    case HierarchyIssue::Code::AddRemoveConflict: return "AddRemoveConflict";
    case HierarchyIssue::Code::RootHasRemovals: return "RootHasRemovals";
    }
    return {};
}

std::vector<Rule> ResolvedModule::rule_vector() const {
    std::vector<Rule> out;
    out.reserve(rules.size());
    for (const auto& [_, r] : rules) out.push_back(r);
    return out;
}

std::vector<HierarchyIssue> validate_hierarchy(const Hierarchy& h) {
    std::vector<HierarchyIssue> issues;

    for (const auto& [id, m] : h.modules) {
        if (m.parent && !h.modules.contains(*m.parent))
            issues.push_back({HierarchyIssue::Code::UnknownParent, id,
                              "parent '" + *m.parent + "' of module '" + id + "' does not exist",
                              {}});
        if (m.is_root()) {
            if (!m.rules_removed.empty() || !m.inputs_removed.empty() || !m.outputs_removed.empty())
                issues.push_back({HierarchyIssue::Code::RootHasRemovals, id,
                                  "root module '" + id + "' has removal sets", {}});
        }
        auto ids = rules_by_id(m.rules_added);
        for (const auto& rid : m.rules_removed)
            if (ids.contains(rid))
                issues.push_back({HierarchyIssue::Code::AddRemoveConflict, id,
                                  "module '" + id + "' both adds and removes rule '" + rid + "'", {}});
    }

    // Parent-chain walk with a visited set finds cycles; report each once,
    // keyed by its lexicographically least member.
    std::set<std::string> reported;
    for (const auto& [id, m] : h.modules) {
        std::vector<std::string> path;
        std::set<std::string> seen;
        const std::string* cur = &id;
        while (true) {
            if (seen.contains(*cur)) {
                std::vector<std::string> cycle(path.begin() + (std::find(path.begin(), path.end(), *cur) - path.begin()),
                                               path.end());
                std::string least = *std::min_element(cycle.begin(), cycle.end());
                if (reported.insert(least).second) {
                    std::ostringstream msg;
                    msg << "inheritance cycle: ";
                    for (const auto& p : cycle) msg << p << " -> ";
                    msg << *cur;
                    issues.push_back({HierarchyIssue::Code::CycleDetected, least, msg.str(), cycle});
                }
                break;
            }
            seen.insert(*cur);
            path.push_back(*cur);
            auto it = h.modules.find(*cur);
            if (it == h.modules.end() || !it->second.parent) break;
            cur = &*it->second.parent;
        }
    }
    return issues;
}

namespace {

std::vector<const RuleModule*> chain_to_root(const Hierarchy& h, const std::string& id) {
    std::vector<const RuleModule*> chain;
    std::set<std::string> seen;
    const RuleModule* m = &h.module(id);
    while (true) {
        if (!seen.insert(m->id).second)
            throw ResolveError(ResolveError::Code::HierarchyCycle, id,
                               "inheritance cycle while resolving '" + id + "'");
        chain.push_back(m);
        if (!m->parent) break;
        m = &h.module(*m->parent);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

std::set<Predicate> abstract_set(const std::map<std::string, Rule>& rules,
                                 const std::set<Predicate>& inputs,
                                 const std::set<Predicate>& all) {
    std::set<Predicate> defined;
    for (const auto& [_, r] : rules) defined.insert(r.head_predicate());
    std::set<Predicate> abstract;
    for (const auto& p : all)
        if (!p.is_truth() && !inputs.contains(p) && !defined.contains(p))
            abstract.insert(p);
    return abstract;
}

} // namespace

ResolvedModule resolve(const Hierarchy& h, const std::string& id) {
    ResolvedModule out;
    out.id = id;

    for (const RuleModule* m : chain_to_root(h, id)) {
        for (const auto& r : m->rules_added) {
            if (m->rules_removed.contains(r.id))
                throw ResolveError(ResolveError::Code::AddRemoveConflict, m->id,
                                   "module '" + m->id + "' both adds and removes rule '" + r.id + "'");
            auto [_, inserted] = out.rules.emplace(r.id, r);
            if (!inserted)
                throw ResolveError(ResolveError::Code::DuplicateRuleId, m->id,
                                   "rule id '" + r.id + "' added by module '" + m->id +
                                       "' already exists in the inherited rule set");
        }
        for (const auto& rid : m->rules_removed) {
            if (out.rules.erase(rid) == 0)
                throw ResolveError(ResolveError::Code::RemovedRuleNotInherited, m->id,
                                   "module '" + m->id + "' removes rule '" + rid +
                                       "' which is not inherited");
        }
        for (const auto& p : m->inputs_added) out.inputs.insert(p);
        for (const auto& p : m->inputs_removed) {
            if (out.inputs.erase(p) == 0)
                throw ResolveError(ResolveError::Code::RemovedInputNotInherited, m->id,
                                   "module '" + m->id + "' removes input " + p.to_string() +
                                       " which is not inherited");
        }
        for (const auto& p : m->outputs_added) out.outputs.insert(p);
        for (const auto& p : m->outputs_removed) {
            if (out.outputs.erase(p) == 0)
                throw ResolveError(ResolveError::Code::RemovedOutputNotInherited, m->id,
                                   "module '" + m->id + "' removes output " + p.to_string() +
                                       " which is not inherited");
        }
        for (const auto& p : out.inputs)
            if (out.outputs.contains(p))
                throw ResolveError(ResolveError::Code::InterfaceOverlap, m->id,
                                   "predicate " + p.to_string() + " is both input and output at module '" +
                                       m->id + "'");
        for (const auto& s : m->restrictions_added) out.restrictions.insert(s);
    }

    out.predicates = out.inputs;
    for (const auto& p : out.outputs) out.predicates.insert(p);
    for (const auto& [_, r] : out.rules) {
        out.predicates.insert(r.head_predicate());
        for (const auto& p : r.body_predicates()) out.predicates.insert(p);
    }
    out.abstract_predicates = abstract_set(out.rules, out.inputs, out.predicates);
    return out;
}

std::set<std::pair<Predicate, Predicate>> dependency_graph(const ResolvedModule& rm) {
    std::set<std::pair<Predicate, Predicate>> edges;
    for (const auto& [_, r] : rm.rules) {
        Predicate head = r.head_predicate();
        for (const auto& body : r.body_predicates())
            edges.emplace(head, body);
    }
    return edges;
}

std::set<Predicate> abstract_predicates(const ResolvedModule& rm) {
    return abstract_set(rm.rules, rm.inputs, rm.predicates);
}

std::set<Predicate> concrete_predicates(const ResolvedModule& rm) {
    std::set<Predicate> abstract = abstract_predicates(rm);
    std::set<Predicate> out;
    for (const auto& p : rm.predicates)
        if (!abstract.contains(p)) out.insert(p);
    return out;
}

} // namespace rmod
