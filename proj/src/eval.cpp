#include "rmod/eval.hpp"

#include "rmod/analysis.hpp"

#include <cassert>
#include <optional>

namespace rmod {

namespace {

using Relation = std::set<Tuple>;
using Store = std::map<Predicate, Relation>;

const Relation& relation_of(const Store& store, const Predicate& p) {
    static const Relation empty;
    auto it = store.find(p);
    return it == store.end() ? empty : it->second;
}

std::optional<Value> eval_expr(const SlotExpr& e, const std::vector<Value>& env) {
    struct Visitor {
        const std::vector<Value>& env;
        std::optional<Value> operator()(const SlotExpr::Const& c) const { return c.value; }
        std::optional<Value> operator()(const SlotExpr::Slot& s) const { return env[s.index]; }
        std::optional<Value> operator()(const SlotExpr::Binary& b) const {
            auto lhs = std::visit(*this, b.lhs->node());
            auto rhs = std::visit(*this, b.rhs->node());
            if (!lhs || !rhs || !lhs->is_number() || !rhs->is_number())
                return std::nullopt;
            const Rational& x = lhs->num();
            const Rational& y = rhs->num();
            switch (b.op) {
            case ArithOp::Add: return Value::number(x + y);
            case ArithOp::Sub: return Value::number(x - y);
            case ArithOp::Mul: return Value::number(x * y);
            case ArithOp::Div:
                if (y == 0) return std::nullopt;
                return Value::number(x / y);
            }
            return std::nullopt;
        }
    };
    return std::visit(Visitor{env}, e.node());
}

bool compare(CmpOp op, const Value& a, const Value& b) {
    auto c = a <=> b;
    switch (op) {
    case CmpOp::Lt: return c < 0;
    case CmpOp::Le: return c <= 0;
    case CmpOp::Eq: return c == 0;
    case CmpOp::Ne: return c != 0;
    case CmpOp::Ge: return c >= 0;
    case CmpOp::Gt: return c > 0;
    }
    return false;
}

/// Executes a compiled plan against the store; `delta_step` selects one Match
/// step that reads `delta` instead of the full relation (semi-naive variant;
/// -1 reads full relations everywhere).
class PlanRunner {
public:
    PlanRunner(const RulePlan& plan, const Store& store, int delta_step, const Relation* delta)
        : plan_(plan), store_(store), delta_step_(delta_step), delta_(delta),
          env_(static_cast<std::size_t>(plan.slot_count), Value::symbol("")) {}

    template <typename Sink>
    void run(Sink&& sink) {
        exec(0, sink);
    }

private:
    template <typename Sink>
    void exec(std::size_t step_index, Sink& sink) {
        if (step_index == plan_.steps.size()) {
            Tuple head;
            head.reserve(plan_.head_args.size());
            for (const auto& a : plan_.head_args)
                head.push_back(a.kind == RulePlan::Arg::Kind::Const ? a.constant : env_[a.slot]);
            sink(std::move(head));
            return;
        }
        const auto& step = plan_.steps[step_index];
        if (const auto* m = std::get_if<RulePlan::Match>(&step)) {
            const Relation& rel = (static_cast<int>(step_index) == delta_step_)
                                      ? *delta_
                                      : relation_of(store_, m->pred);
            if (m->pred.is_truth()) {
                exec(step_index + 1, sink);  // true/0 always satisfied
                return;
            }
            for (const Tuple& tuple : rel) {
                if (match_tuple(m->args, tuple))
                    exec(step_index + 1, sink);
            }
            return;
        }
        if (const auto* f = std::get_if<RulePlan::Filter>(&step)) {
            auto lhs = eval_expr(f->lhs, env_);
            auto rhs = eval_expr(f->rhs, env_);
            if (lhs && rhs && compare(f->op, *lhs, *rhs))
                exec(step_index + 1, sink);
            return;
        }
        if (const auto* a = std::get_if<RulePlan::Assign>(&step)) {
            auto v = eval_expr(a->expr, env_);
            if (!v) return;  // non-numeric operand or division by zero: no binding
            env_[a->slot] = std::move(*v);
            exec(step_index + 1, sink);
            return;
        }
        const auto& n = std::get<RulePlan::Absent>(step);
        if (n.pred.is_truth()) return;  // `not true` never holds
        Tuple probe;
        probe.reserve(n.args.size());
        for (const auto& arg : n.args)
            probe.push_back(arg.kind == RulePlan::Arg::Kind::Const ? arg.constant : env_[arg.slot]);
        if (!relation_of(store_, n.pred).contains(probe))
            exec(step_index + 1, sink);
    }

    bool match_tuple(const std::vector<RulePlan::Arg>& args, const Tuple& tuple) {
        assert(args.size() == tuple.size());
        for (std::size_t i = 0; i < args.size(); ++i) {
            const auto& a = args[i];
            switch (a.kind) {
            case RulePlan::Arg::Kind::Const:
                if (!(a.constant == tuple[i])) return false;
                break;
            case RulePlan::Arg::Kind::Check:
                if (!(env_[a.slot] == tuple[i])) return false;
                break;
            case RulePlan::Arg::Kind::Bind:
                env_[a.slot] = tuple[i];
                break;
            }
        }
        return true;
    }

    const RulePlan& plan_;
    const Store& store_;
    int delta_step_;
    const Relation* delta_;
    std::vector<Value> env_;
};

} // namespace

std::map<Predicate, std::set<Tuple>> evaluate(const std::vector<Rule>& rules,
                                              const Dataset& input_facts,
                                              const EvalOptions& options) {
    std::vector<RulePlan> plans;
    plans.reserve(rules.size());
    for (const auto& r : rules) plans.push_back(analyze_rule(r));

    std::vector<std::set<Predicate>> strata = stratify(rules);
    std::map<Predicate, std::size_t> stratum_of;
    for (std::size_t s = 0; s < strata.size(); ++s)
        for (const auto& p : strata[s]) stratum_of[p] = s;

    Store full = input_facts.extensions;
    std::uint64_t derived_count = 0;

    auto insert_new = [&](const Predicate& pred, Tuple tuple, Store& delta_out) {
        auto [it, inserted] = full[pred].insert(tuple);
        if (!inserted) return;
        delta_out[pred].insert(std::move(tuple));
        if (++derived_count > options.max_derived_facts)
            throw EvalError(EvalError::Code::DerivationCapExceeded, options.max_derived_facts);
    };

    for (std::size_t s = 0; s < strata.size(); ++s) {
        std::vector<std::size_t> stratum_rules;
        for (std::size_t i = 0; i < rules.size(); ++i)
            if (stratum_of.at(rules[i].head_predicate()) == s) stratum_rules.push_back(i);
        if (stratum_rules.empty()) continue;

        // Seed round over full relations, then delta-driven rounds.
        Store delta;
        for (std::size_t i : stratum_rules) {
            PlanRunner runner(plans[i], full, -1, nullptr);
            const Predicate head = plans[i].head_pred;
            runner.run([&](Tuple t) { insert_new(head, std::move(t), delta); });
        }
        while (!delta.empty()) {
            Store next_delta;
            for (std::size_t i : stratum_rules) {
                const RulePlan& plan = plans[i];
                for (std::size_t step = 0; step < plan.steps.size(); ++step) {
                    const auto* m = std::get_if<RulePlan::Match>(&plan.steps[step]);
                    if (!m) continue;
                    auto st = stratum_of.find(m->pred);
                    if (st == stratum_of.end() || st->second != s) continue;
                    auto d = delta.find(m->pred);
                    if (d == delta.end() || d->second.empty()) continue;
                    PlanRunner runner(plan, full, static_cast<int>(step), &d->second);
                    const Predicate head = plan.head_pred;
                    runner.run([&](Tuple t) { insert_new(head, std::move(t), next_delta); });
                }
            }
            delta = std::move(next_delta);
        }
    }

    std::map<Predicate, std::set<Tuple>> result;
    std::set<Predicate> inputs = input_facts.schema();
    for (const auto& r : rules) {
        Predicate h = r.head_predicate();
        if (!inputs.contains(h))
            result[h] = relation_of(full, h);
    }
    return result;
}

} // namespace rmod
