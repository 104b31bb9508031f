#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <vector>

namespace rmod {

/// Exact rational arithmetic; fact-set equality must be exact, so no floats anywhere.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// A ground value: a symbol (lowercase-leading token), an exact number, or a quoted string.
class Value {
public:
    enum class Kind { Symbol, Number, String };

    static Value symbol(std::string name) { return Value(Kind::Symbol, std::move(name), 0); }
    static Value number(Rational n) { return Value(Kind::Number, {}, std::move(n)); }
    static Value string(std::string text) { return Value(Kind::String, std::move(text), 0); }

    Kind kind() const { return kind_; }
    bool is_symbol() const { return kind_ == Kind::Symbol; }
    bool is_number() const { return kind_ == Kind::Number; }
    bool is_string() const { return kind_ == Kind::String; }

    const std::string& text() const { return text_; }
    const Rational& num() const { return num_; }

    /// Canonical source form: symbols verbatim, numbers as integer/decimal
    /// (or `p/q` when the denominator is not of the form 2^a*5^b), strings quoted.
    std::string to_string() const;

    std::strong_ordering operator<=>(const Value& other) const;
    bool operator==(const Value& other) const;

private:
    Value(Kind k, std::string t, Rational n) : kind_(k), text_(std::move(t)), num_(std::move(n)) {}

    Kind kind_;
    std::string text_;
    Rational num_;
};

using Tuple = std::vector<Value>;

std::string to_string(const Tuple& tuple);

/// Canonical rendering of a rational (shared with Value::to_string).
std::string render_rational(const Rational& r);

} // namespace rmod
