#pragma once

#include "rmod/rule.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rmod {

/// Thrown when a rule is unsafe; names the offending variable.
class SafetyError : public std::runtime_error {
public:
    SafetyError(std::string rule_id, std::string variable)
        : std::runtime_error("unsafe variable '" + variable + "' in rule " + rule_id),
          rule_id_(std::move(rule_id)), variable_(std::move(variable)) {}

    const std::string& rule_id() const { return rule_id_; }
    const std::string& variable() const { return variable_; }

private:
    std::string rule_id_;
    std::string variable_;
};

/// Thrown when a rule set has no stratification (a negative cycle).
class StratifyError : public std::runtime_error {
public:
    explicit StratifyError(std::vector<Predicate> cycle)
        : std::runtime_error(format(cycle)), cycle_(std::move(cycle)) {}

    const std::vector<Predicate>& cycle() const { return cycle_; }

private:
    static std::string format(const std::vector<Predicate>& cycle);
    std::vector<Predicate> cycle_;
};

/// Compiled arithmetic expression: variables resolved to slot indices.
class SlotExpr {
public:
    struct Const { Value value; };
    struct Slot { int index; };
    struct Binary {
        ArithOp op;
        std::shared_ptr<const SlotExpr> lhs, rhs;
    };

    explicit SlotExpr(Const c) : node_(std::move(c)) {}
    explicit SlotExpr(Slot s) : node_(s) {}
    explicit SlotExpr(Binary b) : node_(std::move(b)) {}

    const std::variant<Const, Slot, Binary>& node() const { return node_; }

private:
    std::variant<Const, Slot, Binary> node_;
};

/// A safe execution order for a rule body, with variables numbered in
/// first-binding order. Produced by analyze_rule; consumed by the evaluators.
struct RulePlan {
    struct Arg {
        enum class Kind { Const, Bind, Check };
        Kind kind;
        Value constant{Value::symbol("")};
        int slot = -1;
    };
    struct Match {   // positive body atom: join/scan
        Predicate pred;
        std::vector<Arg> args;
    };
    struct Filter {  // comparison with both sides bound
        CmpOp op;
        SlotExpr lhs, rhs;
    };
    struct Assign {  // arithmetic binding of a fresh slot
        int slot;
        SlotExpr expr;
    };
    struct Absent {  // negated atom, all arguments bound
        Predicate pred;
        std::vector<Arg> args;
    };
    using Step = std::variant<Match, Filter, Assign, Absent>;

    std::vector<Step> steps;
    std::vector<Arg> head_args;   // Const or Check only
    Predicate head_pred;
    int slot_count = 0;
    std::map<std::string, int> slots;  // variable name -> slot
};

/// Checks safety and produces the execution plan. Throws SafetyError.
RulePlan analyze_rule(const Rule& r);

/// Safety check only (used at parse time).
void check_rule_safety(const Rule& r);

/// Assigns every predicate of the rule set to exactly one stratum: negated
/// dependencies point to strictly lower strata, positive ones to lower-or-equal.
/// Throws StratifyError on a negative cycle.
std::vector<std::set<Predicate>> stratify(const std::vector<Rule>& rules);

} // namespace rmod
