#pragma once

#include "rmod/rule.hpp"
#include "rmod/value.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace rmod {

/// Named fact extensions. The schema P_d is exactly the key set of extensions;
/// every tuple's length equals its predicate's arity.
struct Dataset {
    std::string name;
    std::map<Predicate, std::set<Tuple>> extensions;

    std::set<Predicate> schema() const {
        std::set<Predicate> s;
        for (const auto& [p, _] : extensions) s.insert(p);
        return s;
    }

    void add_fact(const Predicate& p, Tuple t) {
        if (t.size() != p.arity)
            throw std::invalid_argument("fact arity mismatch for " + p.to_string());
        extensions[p].insert(std::move(t));
    }

    bool operator==(const Dataset&) const = default;
};

} // namespace rmod
