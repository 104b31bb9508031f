#pragma once

#include "rmod/dataset.hpp"
#include "rmod/rule.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmod {

struct EvalOptions {
    /// Total derived-fact cap; exceeding it aborts evaluation (runaway
    /// arithmetic recursion has no other termination guarantee).
    std::uint64_t max_derived_facts = 1'000'000;
};

class EvalError : public std::runtime_error {
public:
    enum class Code { DerivationCapExceeded };

    EvalError(Code code, std::uint64_t cap)
        : std::runtime_error("derivation cap exceeded (" + std::to_string(cap) + " derived facts)"),
          code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

/// Bottom-up stratified evaluation (semi-naive). Returns the least model
/// restricted to derived (non-input) predicates; head predicates that derive
/// nothing are present with empty extensions. Pure: identical inputs yield
/// identical fact maps.
std::map<Predicate, std::set<Tuple>> evaluate(const std::vector<Rule>& rules,
                                              const Dataset& input_facts,
                                              const EvalOptions& options = {});

} // namespace rmod
