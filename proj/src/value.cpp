#include "rmod/value.hpp"

#include <sstream>

namespace rmod {

std::strong_ordering Value::operator<=>(const Value& other) const {
    if (kind_ != other.kind_)
        return static_cast<int>(kind_) <=> static_cast<int>(other.kind_);
    switch (kind_) {
    case Kind::Number:
        if (num_ < other.num_) return std::strong_ordering::less;
        if (other.num_ < num_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    default:
        return text_ <=> other.text_;
    }
}

bool Value::operator==(const Value& other) const {
    return (*this <=> other) == std::strong_ordering::equal;
}

std::string render_rational(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();

    // Terminating decimal iff den = 2^a * 5^b.
    BigInt d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1)
        return num.str() + "/" + den.str();

    int digits = std::max(twos, fives);
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    BigInt scaled = num * scale / den;

    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string s = scaled.str();
    if (static_cast<int>(s.size()) <= digits)
        s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return negative ? "-" + s : s;
}

std::string Value::to_string() const {
    switch (kind_) {
    case Kind::Symbol:
        return text_;
    case Kind::Number:
        return render_rational(num_);
    case Kind::String: {
        std::string out = "\"";
        for (char c : text_) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        out.push_back('"');
        return out;
    }
    }
    return {};
}

std::string to_string(const Tuple& tuple) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out << ", ";
        out << tuple[i].to_string();
    }
    out << ")";
    return out.str();
}

} // namespace rmod
