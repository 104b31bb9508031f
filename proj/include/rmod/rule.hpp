#pragma once

#include "rmod/value.hpp"

#include <compare>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rmod {

/// A relation symbol. Identity is the (name, arity) pair: lValue/2 != lValue/3.
struct Predicate {
    std::string name;
    std::size_t arity = 0;

    auto operator<=>(const Predicate&) const = default;

    /// "name/arity" display form.
    std::string to_string() const { return name + "/" + std::to_string(arity); }

    /// The reserved nullary predicate that is always satisfied.
    static Predicate truth() { return {"true", 0}; }
    bool is_truth() const { return arity == 0 && name == "true"; }
};

/// A rule argument: an uppercase-leading variable or a ground constant.
struct Term {
    static Term variable(std::string name) { return Term{std::move(name), std::nullopt}; }
    static Term constant(Value v) { return Term{{}, std::move(v)}; }

    bool is_variable() const { return !value.has_value(); }
    bool is_constant() const { return value.has_value(); }

    std::string var;            // set when variable
    std::optional<Value> value; // set when constant

    bool operator==(const Term&) const = default;
    std::string to_string() const { return is_variable() ? var : value->to_string(); }
};

struct Atom {
    std::string predicate_name;
    std::vector<Term> args;

    Predicate predicate() const { return {predicate_name, args.size()}; }
    bool operator==(const Atom&) const = default;
    std::string to_string() const;
};

enum class CmpOp { Lt, Le, Eq, Ne, Ge, Gt };

std::string to_string(CmpOp op);

enum class ArithOp { Add, Sub, Mul, Div };

/// Arithmetic expression tree over terms: `V * 0.8`, `(A + B) / 2`.
class ArithExpr {
public:
    struct Binary {
        ArithOp op;
        std::shared_ptr<const ArithExpr> lhs;
        std::shared_ptr<const ArithExpr> rhs;
    };

    explicit ArithExpr(Term t) : node_(std::move(t)) {}
    ArithExpr(ArithOp op, ArithExpr lhs, ArithExpr rhs)
        : node_(Binary{op, std::make_shared<const ArithExpr>(std::move(lhs)),
                       std::make_shared<const ArithExpr>(std::move(rhs))}) {}

    bool is_term() const { return std::holds_alternative<Term>(node_); }
    const Term& term() const { return std::get<Term>(node_); }
    const Binary& binary() const { return std::get<Binary>(node_); }

    void collect_variables(std::set<std::string>& out) const;
    std::string to_string() const;

    bool operator==(const ArithExpr& other) const;

private:
    std::variant<Term, Binary> node_;
};

/// Body literal: a (possibly negated) atom, a comparison, or an arithmetic binding.
struct AtomLiteral {
    Atom atom;
    bool negated = false;
    bool operator==(const AtomLiteral&) const = default;
};

struct Comparison {
    CmpOp op;
    Term lhs;
    ArithExpr rhs;
    bool operator==(const Comparison&) const = default;
};

/// `Var = expr`. Binds Var when unbound, otherwise acts as an equality test.
struct Binding {
    std::string var;
    ArithExpr rhs;
    bool operator==(const Binding&) const = default;
};

using Literal = std::variant<AtomLiteral, Comparison, Binding>;

std::string to_string(const Literal& lit);

struct Rule {
    std::string id;
    Atom head;
    std::vector<Literal> body;

    Predicate head_predicate() const { return head.predicate(); }
    /// B_r: predicates of positive and negated body atoms.
    std::set<Predicate> body_predicates() const;

    bool operator==(const Rule&) const = default;
};

/// (B_r, H_r) of a rule.
std::pair<std::set<Predicate>, std::set<Predicate>> rule_predicates(const Rule& r);

/// Canonical one-line source form; parsing it back yields a structurally equal rule.
std::string render_rule(const Rule& r);

} // namespace rmod
