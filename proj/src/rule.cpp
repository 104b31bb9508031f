#include "rmod/rule.hpp"

#include <sstream>

namespace rmod {

std::string Atom::to_string() const {
    if (args.empty())
        return predicate_name;
    std::ostringstream out;
    out << predicate_name << "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out << ", ";
        out << args[i].to_string();
    }
    out << ")";
    return out.str();
}

std::string to_string(CmpOp op) {
    switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
    }
    return {};
}

namespace {

const char* arith_op_text(ArithOp op) {
    switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/";
    }
    return {};
}

int precedence(ArithOp op) {
    return (op == ArithOp::Mul || op == ArithOp::Div) ? 2 : 1;
}

void render_expr(const ArithExpr& e, std::ostream& out, int parent_prec) {
    if (e.is_term()) {
        out << e.term().to_string();
        return;
    }
    const auto& b = e.binary();
    int prec = precedence(b.op);
    bool parens = prec < parent_prec;
    if (parens) out << "(";
    render_expr(*b.lhs, out, prec);
    out << " " << arith_op_text(b.op) << " ";
    // Right operand needs parens when same precedence (left-assoc rendering).
    render_expr(*b.rhs, out, prec + 1);
    if (parens) out << ")";
}

} // namespace

void ArithExpr::collect_variables(std::set<std::string>& out) const {
    if (is_term()) {
        if (term().is_variable()) out.insert(term().var);
        return;
    }
    binary().lhs->collect_variables(out);
    binary().rhs->collect_variables(out);
}

std::string ArithExpr::to_string() const {
    std::ostringstream out;
    render_expr(*this, out, 0);
    return out.str();
}

bool ArithExpr::operator==(const ArithExpr& other) const {
    if (is_term() != other.is_term()) return false;
    if (is_term()) return term() == other.term();
    const auto& a = binary();
    const auto& b = other.binary();
    return a.op == b.op && *a.lhs == *b.lhs && *a.rhs == *b.rhs;
}

std::string to_string(const Literal& lit) {
    if (const auto* a = std::get_if<AtomLiteral>(&lit))
        return a->negated ? "not " + a->atom.to_string() : a->atom.to_string();
    if (const auto* c = std::get_if<Comparison>(&lit))
        return c->lhs.to_string() + " " + to_string(c->op) + " " + c->rhs.to_string();
    const auto& b = std::get<Binding>(lit);
    return b.var + " = " + b.rhs.to_string();
}

std::set<Predicate> Rule::body_predicates() const {
    std::set<Predicate> preds;
    for (const auto& lit : body)
        if (const auto* a = std::get_if<AtomLiteral>(&lit))
            preds.insert(a->atom.predicate());
    return preds;
}

std::pair<std::set<Predicate>, std::set<Predicate>> rule_predicates(const Rule& r) {
    return {r.body_predicates(), {r.head_predicate()}};
}

std::string render_rule(const Rule& r) {
    std::ostringstream out;
    out << r.id << ": " << r.head.to_string() << " :- ";
    for (std::size_t i = 0; i < r.body.size(); ++i) {
        if (i) out << ", ";
        out << to_string(r.body[i]);
    }
    out << ".";
    return out.str();
}

} // namespace rmod
