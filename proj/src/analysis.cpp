#include "rmod/analysis.hpp"

#include <algorithm>
#include <sstream>

namespace rmod {

std::string StratifyError::format(const std::vector<Predicate>& cycle) {
    std::ostringstream out;
    out << "rule set is not stratifiable; negative cycle through ";
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (i) out << ", ";
        out << cycle[i].to_string();
    }
    return out.str();
}

namespace {

class Planner {
public:
    explicit Planner(const Rule& rule) : rule_(rule) {}

    RulePlan run() {
        std::vector<bool> done(rule_.body.size(), false);
        std::size_t remaining = rule_.body.size();
        while (remaining > 0) {
            bool progressed = false;
            // Cheap bound checks/filters first, then the next positive atom.
            for (std::size_t i = 0; i < rule_.body.size() && !progressed; ++i) {
                if (done[i]) continue;
                progressed = try_non_match(rule_.body[i]);
                if (progressed) { done[i] = true; --remaining; }
            }
            if (progressed) continue;
            for (std::size_t i = 0; i < rule_.body.size() && !progressed; ++i) {
                if (done[i]) continue;
                if (const auto* a = std::get_if<AtomLiteral>(&rule_.body[i]); a && !a->negated) {
                    plan_match(a->atom);
                    done[i] = true;
                    --remaining;
                    progressed = true;
                }
            }
            if (!progressed)
                throw SafetyError(rule_.id, first_unbound_variable(done));
        }
        plan_head();
        plan_.head_pred = rule_.head_predicate();
        plan_.slot_count = static_cast<int>(next_slot_);
        return std::move(plan_);
    }

private:
    bool bound(const std::string& var) const { return plan_.slots.count(var) > 0; }

    bool expr_bound(const ArithExpr& e) const {
        std::set<std::string> vars;
        e.collect_variables(vars);
        return std::all_of(vars.begin(), vars.end(), [&](const auto& v) { return bound(v); });
    }

    int slot_of(const std::string& var) { return plan_.slots.at(var); }

    int new_slot(const std::string& var) {
        int s = static_cast<int>(next_slot_++);
        plan_.slots.emplace(var, s);
        return s;
    }

    SlotExpr compile_expr(const ArithExpr& e) {
        if (e.is_term()) {
            const Term& t = e.term();
            if (t.is_constant()) return SlotExpr(SlotExpr::Const{*t.value});
            return SlotExpr(SlotExpr::Slot{slot_of(t.var)});
        }
        const auto& b = e.binary();
        return SlotExpr(SlotExpr::Binary{
            b.op,
            std::make_shared<const SlotExpr>(compile_expr(*b.lhs)),
            std::make_shared<const SlotExpr>(compile_expr(*b.rhs)),
        });
    }

    SlotExpr compile_term(const Term& t) { return compile_expr(ArithExpr(t)); }

    bool try_non_match(const Literal& lit) {
        if (const auto* b = std::get_if<Binding>(&lit)) {
            if (!expr_bound(b->rhs)) return false;
            SlotExpr rhs = compile_expr(b->rhs);
            if (bound(b->var)) {
                plan_.steps.push_back(RulePlan::Filter{CmpOp::Eq, SlotExpr(SlotExpr::Slot{slot_of(b->var)}), std::move(rhs)});
            } else {
                plan_.steps.push_back(RulePlan::Assign{new_slot(b->var), std::move(rhs)});
            }
            return true;
        }
        if (const auto* c = std::get_if<Comparison>(&lit)) {
            if (c->lhs.is_variable() && !bound(c->lhs.var)) return false;
            if (!expr_bound(c->rhs)) return false;
            plan_.steps.push_back(RulePlan::Filter{c->op, compile_term(c->lhs), compile_expr(c->rhs)});
            return true;
        }
        const auto& a = std::get<AtomLiteral>(lit);
        if (!a.negated) return false;
        std::vector<RulePlan::Arg> args;
        for (const auto& t : a.atom.args) {
            if (t.is_constant()) {
                args.push_back({RulePlan::Arg::Kind::Const, *t.value, -1});
            } else if (bound(t.var)) {
                args.push_back({RulePlan::Arg::Kind::Check, Value::symbol(""), slot_of(t.var)});
            } else {
                return false;
            }
        }
        plan_.steps.push_back(RulePlan::Absent{a.atom.predicate(), std::move(args)});
        return true;
    }

    void plan_match(const Atom& atom) {
        std::vector<RulePlan::Arg> args;
        for (const auto& t : atom.args) {
            if (t.is_constant()) {
                args.push_back({RulePlan::Arg::Kind::Const, *t.value, -1});
            } else if (bound(t.var)) {
                args.push_back({RulePlan::Arg::Kind::Check, Value::symbol(""), slot_of(t.var)});
            } else {
                args.push_back({RulePlan::Arg::Kind::Bind, Value::symbol(""), new_slot(t.var)});
            }
        }
        plan_.steps.push_back(RulePlan::Match{atom.predicate(), std::move(args)});
    }

    void plan_head() {
        for (const auto& t : rule_.head.args) {
            if (t.is_constant()) {
                plan_.head_args.push_back({RulePlan::Arg::Kind::Const, *t.value, -1});
            } else if (bound(t.var)) {
                plan_.head_args.push_back({RulePlan::Arg::Kind::Check, Value::symbol(""), slot_of(t.var)});
            } else {
                throw SafetyError(rule_.id, t.var);
            }
        }
    }

    std::string first_unbound_variable(const std::vector<bool>& done) const {
        for (std::size_t i = 0; i < rule_.body.size(); ++i) {
            if (done[i]) continue;
            std::set<std::string> vars;
            const Literal& lit = rule_.body[i];
            if (const auto* a = std::get_if<AtomLiteral>(&lit)) {
                for (const auto& t : a->atom.args)
                    if (t.is_variable()) vars.insert(t.var);
            } else if (const auto* c = std::get_if<Comparison>(&lit)) {
                if (c->lhs.is_variable()) vars.insert(c->lhs.var);
                c->rhs.collect_variables(vars);
            } else {
                std::get<Binding>(lit).rhs.collect_variables(vars);
            }
            for (const auto& v : vars)
                if (!bound(v)) return v;
        }
        return "?";
    }

    const Rule& rule_;
    RulePlan plan_;
    std::size_t next_slot_ = 0;
};

} // namespace

RulePlan analyze_rule(const Rule& r) {
    return Planner(r).run();
}

void check_rule_safety(const Rule& r) {
    analyze_rule(r);
}

namespace {

struct DepGraph {
    std::vector<Predicate> preds;                     // sorted, index = node id
    std::map<Predicate, int> index;
    // adjacency: head -> body dependencies, with negation flag
    std::vector<std::vector<std::pair<int, bool>>> edges;
};

DepGraph build_graph(const std::vector<Rule>& rules) {
    DepGraph g;
    std::set<Predicate> all;
    for (const auto& r : rules) {
        all.insert(r.head_predicate());
        for (const auto& p : r.body_predicates()) all.insert(p);
    }
    g.preds.assign(all.begin(), all.end());
    for (std::size_t i = 0; i < g.preds.size(); ++i) g.index[g.preds[i]] = static_cast<int>(i);
    g.edges.resize(g.preds.size());
    for (const auto& r : rules) {
        int head = g.index.at(r.head_predicate());
        for (const auto& lit : r.body) {
            if (const auto* a = std::get_if<AtomLiteral>(&lit)) {
                int body = g.index.at(a->atom.predicate());
                g.edges[head].emplace_back(body, a->negated);
            }
        }
    }
    for (auto& adj : g.edges) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    return g;
}

// Iterative Tarjan; returns SCC id per node, SCCs numbered in pop order
// (dependencies receive lower ids than their dependents).
std::vector<int> tarjan_sccs(const DepGraph& g, int& scc_count) {
    int n = static_cast<int>(g.preds.size());
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int counter = 0;
    scc_count = 0;

    struct Frame { int node; std::size_t edge; };
    for (int start = 0; start < n; ++start) {
        if (idx[start] != -1) continue;
        std::vector<Frame> frames{{start, 0}};
        idx[start] = low[start] = counter++;
        stack.push_back(start);
        on_stack[start] = true;
        while (!frames.empty()) {
            auto& f = frames.back();
            if (f.edge < g.edges[f.node].size()) {
                int next = g.edges[f.node][f.edge++].first;
                if (idx[next] == -1) {
                    idx[next] = low[next] = counter++;
                    stack.push_back(next);
                    on_stack[next] = true;
                    frames.push_back({next, 0});
                } else if (on_stack[next]) {
                    low[f.node] = std::min(low[f.node], idx[next]);
                }
            } else {
                if (low[f.node] == idx[f.node]) {
                    while (true) {
                        int v = stack.back();
                        stack.pop_back();
                        on_stack[v] = false;
                        comp[v] = scc_count;
                        if (v == f.node) break;
                    }
                    ++scc_count;
                }
                int node = f.node;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().node] = std::min(low[frames.back().node], low[node]);
            }
        }
    }
    return comp;
}

} // namespace

std::vector<std::set<Predicate>> stratify(const std::vector<Rule>& rules) {
    DepGraph g = build_graph(rules);
    int scc_count = 0;
    std::vector<int> comp = tarjan_sccs(g, scc_count);

    // A negative edge inside one SCC is a negative cycle.
    for (std::size_t u = 0; u < g.edges.size(); ++u) {
        for (auto [v, neg] : g.edges[u]) {
            if (neg && comp[u] == comp[static_cast<std::size_t>(v)]) {
                std::vector<Predicate> cycle;
                for (std::size_t i = 0; i < g.preds.size(); ++i)
                    if (comp[i] == comp[u]) cycle.push_back(g.preds[i]);
                throw StratifyError(std::move(cycle));
            }
        }
    }

    // Components are numbered so that dependencies come first; one pass suffices.
    std::vector<int> level(scc_count, 0);
    std::vector<std::vector<int>> members(scc_count);
    for (std::size_t i = 0; i < g.preds.size(); ++i) members[comp[i]].push_back(static_cast<int>(i));
    for (int c = 0; c < scc_count; ++c) {
        for (int u : members[c]) {
            for (auto [v, neg] : g.edges[u]) {
                if (comp[v] == c) continue;
                level[c] = std::max(level[c], level[comp[v]] + (neg ? 1 : 0));
            }
        }
    }

    int max_level = 0;
    for (int c = 0; c < scc_count; ++c) max_level = std::max(max_level, level[c]);
    std::vector<std::set<Predicate>> strata(static_cast<std::size_t>(max_level) + 1);
    for (std::size_t i = 0; i < g.preds.size(); ++i)
        strata[level[comp[i]]].insert(g.preds[i]);
    if (g.preds.empty()) strata.clear();
    return strata;
}

} // namespace rmod
