#include "rmod/parser.hpp"

#include "rmod/analysis.hpp"

#include <cctype>

namespace rmod {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

Lexer::Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {
    advance();
}

Token Lexer::next() {
    Token t = current_;
    advance();
    return t;
}

void Lexer::fail(const std::string& message) const {
    throw ParseError(current_.pos, message);
}

void Lexer::advance() {
    // Skip whitespace and % comments.
    while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (c == '\n') {
            ++line_;
            column_ = 1;
            ++pos_;
        } else if (c == ' ' || c == '\t' || c == '\r') {
            ++column_;
            ++pos_;
        } else if (c == '%') {
            while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        } else {
            break;
        }
    }

    current_ = Token{};
    current_.pos = SourcePos{file_, line_, column_};
    if (pos_ >= text_.size()) {
        current_.kind = TokenKind::End;
        return;
    }

    auto take = [&](std::size_t n) {
        pos_ += n;
        column_ += static_cast<int>(n);
    };

    char c = cur();
    if (ident_start(c)) {
        std::size_t start = pos_;
        while (ident_char(cur())) take(1);
        // '.' continues an identifier when followed by an identifier character: R0.1
        while (cur() == '.' && ident_char(ahead())) {
            take(1);
            while (ident_char(cur())) take(1);
        }
        current_.kind = TokenKind::Ident;
        current_.text = std::string(text_.substr(start, pos_ - start));
        return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(cur()))) take(1);
        std::size_t int_len = pos_ - start;
        std::size_t frac_len = 0;
        if (cur() == '.' && std::isdigit(static_cast<unsigned char>(ahead()))) {
            take(1);
            std::size_t frac_start = pos_;
            while (std::isdigit(static_cast<unsigned char>(cur()))) take(1);
            frac_len = pos_ - frac_start;
        }
        std::string digits = std::string(text_.substr(start, int_len)) +
                             std::string(text_.substr(start + int_len + (frac_len ? 1 : 0), frac_len));
        // Strip leading zeros; cpp_int would read "08" as malformed octal.
        while (digits.size() > 1 && digits.front() == '0') digits.erase(digits.begin());
        BigInt numerator(digits);
        BigInt denominator = 1;
        for (std::size_t i = 0; i < frac_len; ++i) denominator *= 10;
        current_.kind = TokenKind::Number;
        current_.number = Rational(numerator, denominator);
        return;
    }
    if (c == '"') {
        take(1);
        std::string out;
        while (true) {
            if (pos_ >= text_.size() || cur() == '\n')
                throw ParseError(current_.pos, "unterminated string literal");
            char d = cur();
            if (d == '"') {
                take(1);
                break;
            }
            if (d == '\\') {
                take(1);
                char e = cur();
                if (e == 'n') out.push_back('\n');
                else if (e == 't') out.push_back('\t');
                else out.push_back(e);
                take(1);
            } else {
                out.push_back(d);
                take(1);
            }
        }
        current_.kind = TokenKind::String;
        current_.text = std::move(out);
        return;
    }

    auto two = [&](TokenKind k) {
        current_.kind = k;
        take(2);
    };
    auto one = [&](TokenKind k) {
        current_.kind = k;
        take(1);
    };
    switch (c) {
    case '(': one(TokenKind::LParen); return;
    case ')': one(TokenKind::RParen); return;
    case '{': one(TokenKind::LBrace); return;
    case '}': one(TokenKind::RBrace); return;
    case ',': one(TokenKind::Comma); return;
    case ';': one(TokenKind::Semicolon); return;
    case '.': one(TokenKind::Dot); return;
    case ':':
        if (ahead() == '-') { two(TokenKind::Turnstile); return; }
        one(TokenKind::Colon);
        return;
    case '<':
        if (ahead() == '=') { two(TokenKind::Le); return; }
        one(TokenKind::Lt);
        return;
    case '>':
        if (ahead() == '=') { two(TokenKind::Ge); return; }
        one(TokenKind::Gt);
        return;
    case '!':
        if (ahead() == '=') { two(TokenKind::Ne); return; }
        throw ParseError(current_.pos, "unexpected character '!'");
    case '=': one(TokenKind::Eq); return;
    case '+': one(TokenKind::Plus); return;
    case '-': one(TokenKind::Minus); return;
    case '*': one(TokenKind::Star); return;
    case '/': one(TokenKind::Slash); return;
    default:
        throw ParseError(current_.pos, std::string("unexpected character '") + c + "'");
    }
}

namespace detail {

bool is_variable_name(std::string_view name) {
    return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

} // namespace detail

namespace {

using detail::is_variable_name;

Token expect(Lexer& lex, TokenKind kind, const std::string& what) {
    if (lex.peek().kind != kind)
        lex.fail("expected " + what);
    return lex.next();
}

Term parse_term_impl(Lexer& lex) {
    const Token& t = lex.peek();
    switch (t.kind) {
    case TokenKind::Ident: {
        Token tok = lex.next();
        if (is_variable_name(tok.text))
            return Term::variable(tok.text);
        return Term::constant(Value::symbol(tok.text));
    }
    case TokenKind::Number: {
        Token tok = lex.next();
        return Term::constant(Value::number(tok.number));
    }
    case TokenKind::Minus: {
        lex.next();
        Token tok = expect(lex, TokenKind::Number, "a number after '-'");
        return Term::constant(Value::number(-tok.number));
    }
    case TokenKind::String: {
        Token tok = lex.next();
        return Term::constant(Value::string(tok.text));
    }
    default:
        lex.fail("expected a term");
    }
}

ArithExpr parse_arith_expr(Lexer& lex);

ArithExpr parse_arith_primary(Lexer& lex) {
    if (lex.peek().kind == TokenKind::LParen) {
        lex.next();
        ArithExpr e = parse_arith_expr(lex);
        expect(lex, TokenKind::RParen, "')'");
        return e;
    }
    return ArithExpr(parse_term_impl(lex));
}

ArithExpr parse_arith_mul(Lexer& lex) {
    ArithExpr lhs = parse_arith_primary(lex);
    while (lex.peek().kind == TokenKind::Star || lex.peek().kind == TokenKind::Slash) {
        ArithOp op = lex.next().kind == TokenKind::Star ? ArithOp::Mul : ArithOp::Div;
        lhs = ArithExpr(op, std::move(lhs), parse_arith_primary(lex));
    }
    return lhs;
}

ArithExpr parse_arith_expr(Lexer& lex) {
    ArithExpr lhs = parse_arith_mul(lex);
    while (lex.peek().kind == TokenKind::Plus || lex.peek().kind == TokenKind::Minus) {
        ArithOp op = lex.next().kind == TokenKind::Plus ? ArithOp::Add : ArithOp::Sub;
        lhs = ArithExpr(op, std::move(lhs), parse_arith_mul(lex));
    }
    return lhs;
}

Atom parse_atom(Lexer& lex) {
    Token name = expect(lex, TokenKind::Ident, "a predicate name");
    if (is_variable_name(name.text))
        throw ParseError(name.pos, "predicate names must start lowercase: '" + name.text + "'");
    Atom atom{name.text, {}};
    if (lex.peek().kind == TokenKind::LParen) {
        lex.next();
        atom.args.push_back(parse_term_impl(lex));
        while (lex.peek().kind == TokenKind::Comma) {
            lex.next();
            atom.args.push_back(parse_term_impl(lex));
        }
        expect(lex, TokenKind::RParen, "')'");
    }
    return atom;
}

std::optional<CmpOp> cmp_op(TokenKind k) {
    switch (k) {
    case TokenKind::Lt: return CmpOp::Lt;
    case TokenKind::Le: return CmpOp::Le;
    case TokenKind::Eq: return CmpOp::Eq;
    case TokenKind::Ne: return CmpOp::Ne;
    case TokenKind::Ge: return CmpOp::Ge;
    case TokenKind::Gt: return CmpOp::Gt;
    default: return std::nullopt;
    }
}

Literal parse_literal(Lexer& lex) {
    const Token& t = lex.peek();
    if (t.kind == TokenKind::Ident && t.text == "not") {
        lex.next();
        return AtomLiteral{parse_atom(lex), true};
    }
    if (t.kind == TokenKind::Ident && !is_variable_name(t.text)) {
        // Lowercase ident: an atom, unless a comparison operator follows (symbol constant).
        Token name = lex.next();
        if (auto op = cmp_op(lex.peek().kind)) {
            lex.next();
            return Comparison{*op, Term::constant(Value::symbol(name.text)), parse_arith_expr(lex)};
        }
        if (lex.peek().kind == TokenKind::LParen) {
            lex.next();
            Atom atom{name.text, {}};
            atom.args.push_back(parse_term_impl(lex));
            while (lex.peek().kind == TokenKind::Comma) {
                lex.next();
                atom.args.push_back(parse_term_impl(lex));
            }
            expect(lex, TokenKind::RParen, "')'");
            return AtomLiteral{std::move(atom), false};
        }
        return AtomLiteral{Atom{name.text, {}}, false};
    }

    Term lhs = parse_term_impl(lex);
    auto op = cmp_op(lex.peek().kind);
    if (!op)
        lex.fail("expected a comparison operator");
    lex.next();
    ArithExpr rhs = parse_arith_expr(lex);
    if (*op == CmpOp::Eq && lhs.is_variable())
        return Binding{lhs.var, std::move(rhs)};
    return Comparison{*op, std::move(lhs), std::move(rhs)};
}

} // namespace

namespace detail {

Term parse_term(Lexer& lex) { return parse_term_impl(lex); }

Rule parse_rule_body(Lexer& lex) {
    Token id = expect(lex, TokenKind::Ident, "a rule identifier");
    expect(lex, TokenKind::Colon, "':' after the rule identifier");
    Rule rule;
    rule.id = id.text;
    rule.head = parse_atom(lex);
    if (rule.head.predicate().is_truth())
        throw ParseError(id.pos, "the reserved predicate true/0 cannot appear in a rule head");
    expect(lex, TokenKind::Turnstile, "':-'");
    rule.body.push_back(parse_literal(lex));
    while (lex.peek().kind == TokenKind::Comma) {
        lex.next();
        rule.body.push_back(parse_literal(lex));
    }
    expect(lex, TokenKind::Dot, "'.' at the end of the rule");
    return rule;
}

} // namespace detail

Rule parse_rule(std::string_view text, const std::string& file) {
    Lexer lex(text, file);
    Rule rule = detail::parse_rule_body(lex);
    if (lex.peek().kind != TokenKind::End)
        lex.fail("trailing input after the rule");
    check_rule_safety(rule);
    return rule;
}

std::vector<Rule> parse_rules(std::string_view text, const std::string& file) {
    Lexer lex(text, file);
    std::vector<Rule> rules;
    while (lex.peek().kind != TokenKind::End) {
        rules.push_back(detail::parse_rule_body(lex));
        check_rule_safety(rules.back());
    }
    return rules;
}

Dataset parse_dataset(std::string_view text, std::string dataset_name, const std::string& file) {
    Lexer lex(text, file);
    Dataset ds;
    ds.name = std::move(dataset_name);
    std::map<std::string, std::size_t> seen_arity;
    while (lex.peek().kind != TokenKind::End) {
        Token name = expect(lex, TokenKind::Ident, "a predicate name");
        if (is_variable_name(name.text))
            throw ParseError(name.pos, "predicate names must start lowercase: '" + name.text + "'");
        Tuple tuple;
        if (lex.peek().kind == TokenKind::LParen) {
            lex.next();
            while (true) {
                Token pos_tok = lex.peek();
                Term t = parse_term_impl(lex);
                if (t.is_variable())
                    throw ParseError(pos_tok.pos, "facts must be ground; found variable '" + t.var + "'");
                tuple.push_back(*t.value);
                if (lex.peek().kind != TokenKind::Comma) break;
                lex.next();
            }
            expect(lex, TokenKind::RParen, "')'");
        }
        expect(lex, TokenKind::Dot, "'.' after the fact");

        auto [it, inserted] = seen_arity.emplace(name.text, tuple.size());
        if (!inserted && it->second != tuple.size())
            throw ParseError(name.pos, "predicate '" + name.text + "' used with arity " +
                                           std::to_string(tuple.size()) + " but earlier facts have arity " +
                                           std::to_string(it->second));
        Predicate pred{name.text, tuple.size()};
        ds.add_fact(pred, std::move(tuple));
    }
    return ds;
}

} // namespace rmod
