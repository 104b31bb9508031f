#pragma once

#include "rmod/dataset.hpp"
#include "rmod/rule.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmod {

struct SourcePos {
    std::string file;
    int line = 0;
    int column = 0;

    std::string to_string() const {
        return file + ":" + std::to_string(line) + ":" + std::to_string(column);
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, const std::string& message)
        : std::runtime_error(pos.to_string() + ": " + message), pos_(std::move(pos)), message_(message) {}

    const SourcePos& pos() const { return pos_; }
    const std::string& message() const { return message_; }

private:
    SourcePos pos_;
    std::string message_;
};

enum class TokenKind {
    Ident,      // identifiers; '.' joins segments when followed by an identifier char (R0.1)
    Number,
    String,
    LParen, RParen, LBrace, RBrace,
    Comma, Semicolon, Dot, Colon, Turnstile,   // ':-'
    Lt, Le, Eq, Ne, Ge, Gt,
    Plus, Minus, Star, Slash,
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;     // identifier / string payload
    Rational number;      // for Number
    SourcePos pos;
};

/// Tokenizer for all text formats (rules, fact files, module files).
/// '%' starts a comment running to end of line.
class Lexer {
public:
    Lexer(std::string_view text, std::string file);

    const Token& peek() const { return current_; }
    Token next();
    [[noreturn]] void fail(const std::string& message) const;

private:
    void advance();
    char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char ahead(std::size_t k = 1) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }

    std::string_view text_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
};

/// Parses one rule in `ID ':' head ':-' body '.'` form; checks safety.
Rule parse_rule(std::string_view text, const std::string& file = "<rule>");

/// Parses a whole rule file (one rule per statement).
std::vector<Rule> parse_rules(std::string_view text, const std::string& file = "<rules>");

/// Parses a fact file: `predicate(c1, ..., cn).` lines. The dataset name is
/// supplied by the caller (file stem). A predicate appearing with two
/// different arities in one file is a positioned error.
Dataset parse_dataset(std::string_view text, std::string dataset_name,
                      const std::string& file = "<facts>");

namespace detail {
bool is_variable_name(std::string_view name);
Rule parse_rule_body(Lexer& lex);                     // after caller consumed nothing; reads ID ':' ... '.'
Term parse_term(Lexer& lex);
}

} // namespace rmod
