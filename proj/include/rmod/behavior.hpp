#pragma once

#include "rmod/dataset.hpp"
#include "rmod/eval.hpp"
#include "rmod/module.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmod {

class ExecError : public std::runtime_error {
public:
    enum class Code { NotApplicable, AbstractModuleExecution, NoApplicableDatasets };

    ExecError(Code code, std::string module_id, std::set<Predicate> predicates, const std::string& message)
        : std::runtime_error(message), code_(code), module_(std::move(module_id)),
          predicates_(std::move(predicates)) {}

    Code code() const { return code_; }
    const std::string& module_id() const { return module_; }
    /// Missing inputs for NotApplicable; abstract predicates for AbstractModuleExecution.
    const std::set<Predicate>& predicates() const { return predicates_; }

private:
    Code code_;
    std::string module_;
    std::set<Predicate> predicates_;
};

/// p^d_m for every output predicate; key set equals the module's resolved
/// outputs, including empty extensions.
struct ExecutionResult {
    std::string module_id;
    std::string dataset_name;
    std::map<Predicate, std::set<Tuple>> outputs;

    bool operator==(const ExecutionResult&) const = default;
};

/// Output drift of a child against its parent on shared data. Aggregation over
/// datasets is the join of a four-point semilattice: unchanged is the identity,
/// grown ⊔ shrunk = grown_and_shrunk.
enum class ChangeClass { Unchanged, Grown, Shrunk, GrownAndShrunk };

std::string to_string(ChangeClass c);
ChangeClass join(ChangeClass a, ChangeClass b);

struct ExecOptions {
    bool allow_abstract = false;
    EvalOptions eval;
};

/// True iff the module's input schema is covered by the dataset: I_m ⊆ P_d.
bool is_applicable(const Dataset& d, const ResolvedModule& rm);

/// Feeds exactly the I_m extensions of d into the module's rules and restricts
/// the result to O_m. Extensions outside I_m are ignored. Refuses abstract
/// modules unless allow_abstract is set.
ExecutionResult execute(const ResolvedModule& rm, const Dataset& d, const ExecOptions& options = {});

ChangeClass classify_change(const std::set<Tuple>& parent_facts, const std::set<Tuple>& child_facts);

/// Side-by-side execution record for one parent/child pair across datasets.
struct BehavioralComparison {
    std::map<Predicate, ChangeClass> classes;    // outputs of both, concrete in both
    std::set<Predicate> not_comparable;          // outputs of both, abstract in at least one
    std::set<Predicate> dropped_outputs;         // parent outputs missing from the child
    std::vector<std::string> dataset_names;

    struct Witness {
        std::string dataset;
        std::vector<Tuple> tuples;  // at most 5 differing tuples
    };
    std::map<Predicate, Witness> first_growth;   // child-only tuples
    std::map<Predicate, Witness> first_shrink;   // parent-only tuples
};

/// Dynamic detection: executes parent and child on every dataset and joins
/// per-predicate drift classes. Datasets applicable to only one module are
/// rejected, not skipped. The verdict is sound only for the given datasets.
BehavioralComparison detect_behavioral_modifications(const Hierarchy& h,
                                                     const std::string& parent_id,
                                                     const std::string& child_id,
                                                     const std::vector<Dataset>& datasets,
                                                     const EvalOptions& eval = {});

struct BehavioralViolation {
    std::string child;
    Restriction restriction;   // non_growable or non_shrinkable
    Predicate predicate;
    ChangeClass observed;
    std::string witness_dataset;
    std::vector<Tuple> witness_tuples;  // at most 5 differing tuples

    bool operator==(const BehavioralViolation&) const = default;
};

/// Maps detected drift against the parent's resolved non_growable /
/// non_shrinkable restrictions.
std::vector<BehavioralViolation> check_behavioral(const Hierarchy& h,
                                                  const std::string& child_id,
                                                  const std::vector<Dataset>& datasets,
                                                  const EvalOptions& eval = {});

/// Same mapping over an already-computed comparison.
std::vector<BehavioralViolation> behavioral_violations(const Hierarchy& h,
                                                       const std::string& child_id,
                                                       const BehavioralComparison& cmp);

} // namespace rmod
