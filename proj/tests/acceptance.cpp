// Acceptance suite: one pass/fail line per criterion. Exit code = number of
// failed criteria. Run through ctest or directly.

#include "rmod/analysis.hpp"
#include "rmod/behavior.hpp"
#include "rmod/report.hpp"
#include "rmod/workspace.hpp"

#include "support/generators.hpp"
#include "support/naive_eval.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace rmod;
using rmod::testing::naive_evaluate;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = fs::path(RMOD_FIXTURES_DIR) / "loans";
const std::string kCli = RMOD_CLI_PATH;

struct AcceptFail {
    std::string message;
};

void require(bool cond, const std::string& message) {
    if (!cond) throw AcceptFail{message};
}

template <typename T>
std::string show(const T& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = kCli + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    require(pipe != nullptr, "popen failed for: " + cmd);
    CmdResult result;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempWorkspace {
    fs::path path;
    explicit TempWorkspace(const std::string& tag) {
        path = fs::temp_directory_path() / ("rmod_accept_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
        for (const auto& entry : fs::directory_iterator(kFixtures))
            fs::copy_file(entry.path(), path / entry.path().filename());
    }
    ~TempWorkspace() { fs::remove_all(path); }

    void add_file(const std::string& name, const std::string& text) const {
        std::ofstream out(path / name);
        out << text;
    }
    void edit_file(const std::string& name, const std::string& from, const std::string& to) const {
        std::ifstream in(path / name);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string s = buf.str();
        auto pos = s.find(from);
        require(pos != std::string::npos, "edit_file: pattern not found in " + name);
        s.replace(pos, from.size(), to);
        std::ofstream out(path / name);
        out << s;
    }
};

// ---- independent helpers for the oracle side of criterion 3 ----

std::map<Predicate, std::set<Tuple>> oracle_execute(const ResolvedModule& rm, const Dataset& d) {
    Dataset restricted;
    restricted.name = d.name;
    for (const auto& p : rm.inputs) {
        auto it = d.extensions.find(p);
        require(it != d.extensions.end(), "oracle: dataset not applicable to " + rm.id);
        restricted.extensions[p] = it->second;
    }
    auto derived = naive_evaluate(rm.rule_vector(), restricted);
    std::map<Predicate, std::set<Tuple>> out;
    for (const auto& p : rm.outputs) {
        auto it = derived.find(p);
        out[p] = it == derived.end() ? std::set<Tuple>{} : it->second;
    }
    return out;
}

ChangeClass oracle_classify(const std::set<Tuple>& parent, const std::set<Tuple>& child) {
    if (parent == child) return ChangeClass::Unchanged;
    if (std::includes(parent.begin(), parent.end(), child.begin(), child.end()))
        return ChangeClass::Shrunk;
    if (std::includes(child.begin(), child.end(), parent.begin(), parent.end()))
        return ChangeClass::Grown;
    return ChangeClass::GrownAndShrunk;
}

bool defined_or_input(const ResolvedModule& rm, const Predicate& p) {
    if (rm.inputs.contains(p)) return true;
    for (const auto& [_, r] : rm.rules)
        if (r.head_predicate() == p) return true;
    return false;
}

struct OracleComparison {
    std::map<Predicate, ChangeClass> classes;
    std::map<Predicate, std::set<Tuple>> parent_union_gain;  // child-only tuples over all datasets
    std::map<Predicate, std::set<Tuple>> parent_union_loss;  // parent-only tuples over all datasets
};

OracleComparison oracle_compare(const Hierarchy& h, const std::string& parent_id,
                                const std::string& child_id, const std::vector<Dataset>& datasets) {
    ResolvedModule parent = resolve(h, parent_id);
    ResolvedModule child = resolve(h, child_id);
    OracleComparison cmp;
    std::set<Predicate> considered;
    for (const auto& p : parent.outputs)
        if (child.outputs.contains(p) && defined_or_input(parent, p) && defined_or_input(child, p))
            considered.insert(p);
    for (const auto& p : considered) cmp.classes[p] = ChangeClass::Unchanged;
    for (const auto& d : datasets) {
        auto pf = oracle_execute(parent, d);
        auto cf = oracle_execute(child, d);
        for (const auto& p : considered) {
            cmp.classes[p] = join(cmp.classes[p], oracle_classify(pf.at(p), cf.at(p)));
            for (const auto& t : cf.at(p))
                if (!pf.at(p).contains(t)) cmp.parent_union_gain[p].insert(t);
            for (const auto& t : pf.at(p))
                if (!cf.at(p).contains(t)) cmp.parent_union_loss[p].insert(t);
        }
    }
    return cmp;
}

// Violations projected to a comparable shape.
using ViolationKey = std::tuple<RestrictionKind, Predicate, ChangeClass>;

std::set<ViolationKey> violation_keys(const std::vector<BehavioralViolation>& vs) {
    std::set<ViolationKey> out;
    for (const auto& v : vs) out.insert({v.restriction.kind, v.predicate, v.observed});
    return out;
}

std::set<ViolationKey> oracle_expected_violations(const Hierarchy& h, const std::string& child_id,
                                                  const OracleComparison& cmp) {
    std::set<ViolationKey> out;
    const auto& child = h.module(child_id);
    for (const auto& r : resolve_restrictions(h, *child.parent)) {
        if (!r.predicate || !cmp.classes.contains(*r.predicate)) continue;
        ChangeClass cls = cmp.classes.at(*r.predicate);
        bool grew = cls == ChangeClass::Grown || cls == ChangeClass::GrownAndShrunk;
        bool shrank = cls == ChangeClass::Shrunk || cls == ChangeClass::GrownAndShrunk;
        if (r.kind == RestrictionKind::NonGrowable && grew) out.insert({r.kind, *r.predicate, cls});
        if (r.kind == RestrictionKind::NonShrinkable && shrank) out.insert({r.kind, *r.predicate, cls});
    }
    return out;
}

// ---- criteria ----

void criterion_use_case() {
    Workspace ws = load_workspace(kFixtures);

    ResolvedModule loan = resolve(ws.hierarchy, "LoanApps");
    require(loan.is_abstract(), "LoanApps must be abstract");
    std::set<Predicate> expected_abstract = {{"securities", 2}, {"security", 1}, {"sValue", 2}};
    require(loan.abstract_predicates == expected_abstract,
            "LoanApps abstract predicates must be exactly securities/2, security/1, sValue/2");

    require(!resolve(ws.hierarchy, "MortgageApps").is_abstract(), "MortgageApps must be concrete");
    require(!resolve(ws.hierarchy, "PrivateLoanApps").is_abstract(),
            "PrivateLoanApps must be concrete");

    // Resolved rule ids: (LoanApps ids ∪ {R0.1, R7, R8, R9_1, R9_2}) \ {R0}.
    std::set<std::string> loan_ids;
    for (const auto& [id, _] : loan.rules) loan_ids.insert(id);
    std::set<std::string> expected_ids = loan_ids;
    for (const char* id : {"R0.1", "R7", "R8", "R9_1", "R9_2"}) expected_ids.insert(id);
    expected_ids.erase("R0");
    std::set<std::string> actual_ids;
    for (const auto& [id, _] : resolve(ws.hierarchy, "PrivateLoanApps").rules) actual_ids.insert(id);
    require(actual_ids == expected_ids, "resolved PrivateLoanApps rule ids mismatch");

    CmdResult check = run_cli("check " + kFixtures.string());
    require(check.exit_code == 0,
            "pristine `rmod check` must exit 0, got " + show(check.exit_code) + "\n" + check.output);
}

void criterion_structural_mutants() {
    struct Mutant {
        const char* tag;
        const char* file;
        std::string text;
        Restriction expected;
    };
    const std::vector<Mutant> mutants = {
        {"extra_input", "PersonalPlusApps.rmod",
         "module PersonalPlusApps extends PrivateLoanApps {\n  input { add collateral/2; }\n}\n",
         Restriction::no_additional_input()},
        {"removed_input", "QuickLoanApps.rmod",
         "module QuickLoanApps extends LoanApps {\n  input { remove loan/1; }\n}\n",
         Restriction::non_omitable_input({"loan", 1})},
        {"extra_output", "MortgageAppsExt.rmod",
         "module MortgageAppsExt extends MortgageApps {\n  output { add riskScore/1; }\n}\n",
         Restriction::no_additional_output()},
        {"removed_output", "BasicLoanApps.rmod",
         "module BasicLoanApps extends LoanApps {\n  output { remove cwBad/1; }\n}\n",
         Restriction::non_omitable_output({"cwBad", 1})},
    };

    int killed = 0;
    for (const auto& m : mutants) {
        TempWorkspace tmp(std::string("structural_") + m.tag);
        tmp.add_file(m.file, m.text);
        Workspace ws = load_workspace(tmp.path);
        std::string child = fs::path(m.file).stem().string();
        auto violations = check_structural(ws.hierarchy, child);
        require(violations.size() == 1,
                std::string(m.tag) + ": expected exactly one structural violation, got " +
                    show(violations.size()));
        require(violations[0].restriction == m.expected,
                std::string(m.tag) + ": violation names the wrong restriction: " +
                    violations[0].restriction.to_string());
        require(!violations[0].evidence.empty(), std::string(m.tag) + ": violation lacks evidence");

        CmdResult cli = run_cli("check " + tmp.path.string() + " --structural --format json");
        require(cli.exit_code == 1,
                std::string(m.tag) + ": CLI structural check must exit 1, got " + show(cli.exit_code));
        require(cli.output.find(m.expected.to_string()) != std::string::npos,
                std::string(m.tag) + ": CLI report does not name " + m.expected.to_string());
        ++killed;
    }
    require(killed == 4, "expected 4/4 structural mutants killed");
}

void criterion_behavioral_mutants() {
    // (a) lowered lowLValue threshold: 8000 vs parent 10000.
    {
        TempWorkspace tmp("behavioral_a");
        tmp.edit_file("PrivateLoanApps.rmod", "V < 12000", "V < 8000");
        Workspace ws = load_workspace(tmp.path);
        std::vector<Dataset> datasets = ws.dataset_vector();

        OracleComparison oracle = oracle_compare(ws.hierarchy, "LoanApps", "PrivateLoanApps", datasets);
        require(oracle.classes.at({"lowLValue", 2}) == ChangeClass::Shrunk,
                "(a) oracle expects lowLValue to shrink");

        auto cmp = detect_behavioral_modifications(ws.hierarchy, "LoanApps", "PrivateLoanApps", datasets);
        require(cmp.classes == oracle.classes, "(a) detection disagrees with the oracle classes");

        auto violations = check_behavioral(ws.hierarchy, "PrivateLoanApps", datasets);
        auto expected = oracle_expected_violations(ws.hierarchy, "PrivateLoanApps", oracle);
        require(violation_keys(violations) == expected, "(a) violations disagree with the oracle");
        require(expected ==
                    std::set<ViolationKey>{{RestrictionKind::NonShrinkable, {"lowLValue", 2},
                                            ChangeClass::Shrunk}},
                "(a) expected exactly one non_shrinkable(lowLValue/2) violation");
        for (const auto& v : violations) {
            require(!v.witness_tuples.empty(), "(a) violation carries no witness tuples");
            for (const auto& t : v.witness_tuples)
                require(oracle.parent_union_loss.at(v.predicate).contains(t),
                        "(a) witness tuple not in the oracle's lost set");
        }

        CmdResult cli = run_cli("check " + tmp.path.string());
        require(cli.exit_code == 1, "(a) CLI check must exit 1");
        require(cli.output.find("non_shrinkable(lowLValue/2)") != std::string::npos,
                "(a) CLI report does not name non_shrinkable(lowLValue/2)");

        CmdResult conform = run_cli("run " + tmp.path.string() +
                                    " --module PrivateLoanApps --data apps_small --conform");
        require(conform.exit_code == 1, "(a) run --conform must exit 1 on the mutant");
        require(conform.output.find("non_shrinkable(lowLValue/2)") != std::string::npos,
                "(a) run --conform must append the violation");
    }

    // (b) weakened cwGood condition: 40% instead of 60%.
    {
        TempWorkspace tmp("behavioral_b");
        tmp.edit_file("PrivateLoanApps.rmod", "remove R0;",
                      "remove R0;\n    remove R1;\n    add R1W: cwGood(X) :- lValue(X, V), "
                      "securities(X, S), sValue(S, W), T = V * 0.4, W > T.");
        Workspace ws = load_workspace(tmp.path);
        std::vector<Dataset> datasets = ws.dataset_vector();

        OracleComparison oracle = oracle_compare(ws.hierarchy, "LoanApps", "PrivateLoanApps", datasets);
        require(oracle.classes.at({"cwGood", 1}) == ChangeClass::Grown,
                "(b) oracle expects cwGood to grow");

        auto cmp = detect_behavioral_modifications(ws.hierarchy, "LoanApps", "PrivateLoanApps", datasets);
        require(cmp.classes == oracle.classes, "(b) detection disagrees with the oracle classes");

        auto violations = check_behavioral(ws.hierarchy, "PrivateLoanApps", datasets);
        auto keys = violation_keys(violations);
        require(keys == oracle_expected_violations(ws.hierarchy, "PrivateLoanApps", oracle),
                "(b) violations disagree with the oracle");
        require(keys.contains({RestrictionKind::NonGrowable, {"cwGood", 1}, ChangeClass::Grown}),
                "(b) missing the non_growable(cwGood/1) violation");
        // Weakening cwGood also shrinks its negation complement cwBad.
        require(keys.contains({RestrictionKind::NonShrinkable, {"cwBad", 1}, ChangeClass::Shrunk}),
                "(b) missing the companion non_shrinkable(cwBad/1) violation");
        for (const auto& v : violations) {
            const auto& pool = v.restriction.kind == RestrictionKind::NonGrowable
                                   ? oracle.parent_union_gain
                                   : oracle.parent_union_loss;
            for (const auto& t : v.witness_tuples)
                require(pool.at(v.predicate).contains(t), "(b) witness tuple not in the oracle diff");
        }

        CmdResult cli = run_cli("check " + tmp.path.string());
        require(cli.exit_code == 1, "(b) CLI check must exit 1");
        require(cli.output.find("non_growable(cwGood/1)") != std::string::npos,
                "(b) CLI report does not name non_growable(cwGood/1)");
    }

    // (c) legitimate child (threshold 12000) is violation-free.
    {
        Workspace ws = load_workspace(kFixtures);
        std::vector<Dataset> datasets = ws.dataset_vector();
        OracleComparison oracle = oracle_compare(ws.hierarchy, "LoanApps", "PrivateLoanApps", datasets);
        require(oracle_expected_violations(ws.hierarchy, "PrivateLoanApps", oracle).empty(),
                "(c) oracle expects no violations");
        auto violations = check_behavioral(ws.hierarchy, "PrivateLoanApps", datasets);
        require(violations.empty(), "(c) legitimate child must produce zero violations, got " +
                                        show(violations.size()));
        auto cmp = detect_behavioral_modifications(ws.hierarchy, "LoanApps", "PrivateLoanApps", datasets);
        require(cmp.classes == oracle.classes, "(c) detection disagrees with the oracle classes");
    }
}

void criterion_engine_oracle() {
    std::mt19937 rng(0xACCE97);
    int checked = 0;
    for (int i = 0; i < 120; ++i) {
        auto prog = rmod::testing::random_program(rng);
        auto fast = evaluate(prog.rules, prog.facts);
        auto slow = naive_evaluate(prog.rules, prog.facts);
        require(fast == slow, "program " + show(i) + ": semi-naive result differs from the oracle");
        ++checked;
    }
    require(checked >= 100, "fewer than 100 programs checked");
}

void criterion_restriction_transitivity() {
    std::mt19937 rng(0x5EED5);
    int hierarchies = 0, injected = 0;
    for (int i = 0; i < 60; ++i) {
        auto rh = rmod::testing::random_hierarchy(rng);
        ++hierarchies;

        // Every restriction declared by every ancestor appears in the resolved set.
        for (const auto& [id, m] : rh.hierarchy.modules) {
            std::set<Restriction> resolved = resolve(rh.hierarchy, id).restrictions;
            const RuleModule* cur = &m;
            while (true) {
                for (const auto& r : cur->restrictions_added)
                    require(resolved.contains(r),
                            "module " + id + " lost ancestor restriction " + r.to_string());
                if (!cur->parent) break;
                cur = &rh.hierarchy.module(*cur->parent);
            }
        }

        // Inject one violating delta under a random module with a structural restriction.
        std::vector<std::pair<std::string, Restriction>> candidates;
        for (const auto& [id, _] : rh.hierarchy.modules)
            for (const auto& r : resolve_restrictions(rh.hierarchy, id))
                switch (r.kind) {
                case RestrictionKind::NoAdditionalInput:
                case RestrictionKind::NoAdditionalOutput:
                    candidates.push_back({id, r});
                    break;
                case RestrictionKind::NonOmitableInput:
                    if (resolve(rh.hierarchy, id).inputs.contains(*r.predicate))
                        candidates.push_back({id, r});
                    break;
                case RestrictionKind::NonOmitableOutput:
                    if (resolve(rh.hierarchy, id).outputs.contains(*r.predicate))
                        candidates.push_back({id, r});
                    break;
                default:
                    break;
                }
        if (candidates.empty()) continue;
        auto [attach_to, restriction] =
            candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];

        RuleModule mutant;
        mutant.id = "Mutant";
        mutant.parent = attach_to;
        switch (restriction.kind) {
        case RestrictionKind::NoAdditionalInput: mutant.inputs_added = {{"zz", 1}}; break;
        case RestrictionKind::NoAdditionalOutput: mutant.outputs_added = {{"zz", 1}}; break;
        case RestrictionKind::NonOmitableInput: mutant.inputs_removed = {*restriction.predicate}; break;
        case RestrictionKind::NonOmitableOutput: mutant.outputs_removed = {*restriction.predicate}; break;
        default: break;
        }
        Hierarchy mutated = rh.hierarchy;
        mutated.modules.emplace("Mutant", std::move(mutant));
        auto violations = check_structural(mutated, "Mutant");
        bool flagged = false;
        for (const auto& v : violations)
            if (v.restriction == restriction) flagged = true;
        require(flagged, "hierarchy " + show(i) + ": injected violation of " +
                             restriction.to_string() + " under " + attach_to + " was not flagged");
        ++injected;
    }
    require(hierarchies >= 50, "fewer than 50 hierarchies checked");
    require(injected >= 40, "too few violating deltas injected: " + show(injected));
}

void criterion_change_classification() {
    // Exhaustive over all subset pairs of a three-element universe.
    std::vector<Value> universe = {Value::symbol("a"), Value::symbol("b"), Value::symbol("c")};
    std::vector<std::set<Tuple>> subsets;
    for (int mask = 0; mask < 8; ++mask) {
        std::set<Tuple> s;
        for (int b = 0; b < 3; ++b)
            if (mask & (1 << b)) s.insert({universe[b]});
        subsets.push_back(std::move(s));
    }
    for (const auto& parent : subsets) {
        for (const auto& child : subsets) {
            bool sub = std::includes(parent.begin(), parent.end(), child.begin(), child.end());
            bool sup = std::includes(child.begin(), child.end(), parent.begin(), parent.end());
            ChangeClass expected = parent == child      ? ChangeClass::Unchanged
                                   : sub                ? ChangeClass::Shrunk
                                   : sup                ? ChangeClass::Grown
                                                        : ChangeClass::GrownAndShrunk;
            require(classify_change(parent, child) == expected, "classification mismatch");
        }
    }

    const ChangeClass all[] = {ChangeClass::Unchanged, ChangeClass::Grown, ChangeClass::Shrunk,
                               ChangeClass::GrownAndShrunk};
    for (ChangeClass x : all) {
        require(join(ChangeClass::Unchanged, x) == x, "unchanged is not the identity");
        require(join(x, x) == x, "join is not idempotent");
        for (ChangeClass y : all) {
            require(join(x, y) == join(y, x), "join is not commutative");
            for (ChangeClass z : all)
                require(join(join(x, y), z) == join(x, join(y, z)), "join is not associative");
        }
    }
    require(join(ChangeClass::Grown, ChangeClass::Shrunk) == ChangeClass::GrownAndShrunk,
            "grown ⊔ shrunk must be grown_and_shrunk");
}

void criterion_performance() {
    auto started = std::chrono::steady_clock::now();
    CmdResult check = run_cli("check " + kFixtures.string());
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    require(check.exit_code == 0, "performance run must be clean");
    require(seconds < 1.0, "full check took " + show(seconds) + " s (budget: 1 s)");
    std::cout << "    (full check including process start-up: " << seconds << " s)\n";
}

void criterion_determinism() {
    CmdResult a = run_cli("check " + kFixtures.string() + " --format json");
    CmdResult b = run_cli("check " + kFixtures.string() + " --format json");
    require(a.exit_code == 0 && b.exit_code == 0, "determinism runs must be clean");
    require(!a.output.empty(), "empty report");
    require(a.output == b.output, "two json reports differ byte-for-byte");
}

void extra_cli_contract() {
    CmdResult unknown = run_cli("resolve " + kFixtures.string() + " --module NoSuchModule", true);
    require(unknown.exit_code == 2, "resolve of unknown module must exit 2");
    require(unknown.output.find("NoSuchModule") != std::string::npos,
            "error must name the unknown module");

    CmdResult abstract_run =
        run_cli("run " + kFixtures.string() + " --module LoanApps --data apps_small", true);
    require(abstract_run.exit_code == 2, "running an abstract module must exit 2");
    require(abstract_run.output.find("abstract") != std::string::npos,
            "error must mention abstractness");

    CmdResult forced = run_cli("run " + kFixtures.string() +
                               " --module LoanApps --data apps_small --allow-abstract");
    require(forced.exit_code == 0, "--allow-abstract must permit execution");

    TempWorkspace tmp("cli_contract");
    tmp.add_file("noincome.facts", "loan(l9). lValue(l9, 5000). duration(l9, 12). customer(l9, c9).\n"
                                   "mProperty(l9, p9). pValue(p9, 1000). hasPart(p9, p9).\n");
    CmdResult not_applicable =
        run_cli("run " + tmp.path.string() + " --module PrivateLoanApps --data noincome", true);
    require(not_applicable.exit_code == 2, "running on a non-applicable dataset must exit 2");
    require(not_applicable.output.find("income/2") != std::string::npos,
            "error must list the missing input predicate");

    CmdResult conform = run_cli("run " + kFixtures.string() +
                                " --module PrivateLoanApps --data apps_small --conform");
    require(conform.exit_code == 0, "clean --conform run must exit 0");

    CmdResult run_json = run_cli("run " + kFixtures.string() +
                                 " --module PrivateLoanApps --data apps_small --format json");
    require(run_json.exit_code == 0, "json run must exit 0");
    require(run_json.output.find("\"outputs\"") != std::string::npos &&
                run_json.output.find("\"lowLValue/2\"") != std::string::npos,
            "json run output must map output predicates to tuples");

    CmdResult version = run_cli("--version");
    require(version.exit_code == 0 && version.output.find("rmod") != std::string::npos,
            "--version must print the build identity");

    // RMOD_DERIVATION_CAP caps the engine; an exceeded cap is an error (exit 2).
    CmdResult capped =
        run_cli("run " + kFixtures.string() + " --module MortgageApps --data apps_small", true);
    require(capped.exit_code == 0, "uncapped mortgage run must succeed");
    std::string env_cmd = "RMOD_DERIVATION_CAP=2 " + kCli + " run " + kFixtures.string() +
                          " --module MortgageApps --data apps_small 2>&1";
    FILE* pipe = popen(env_cmd.c_str(), "r");
    require(pipe != nullptr, "popen failed");
    std::string cap_out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) cap_out.append(buf, n);
    int cap_status = pclose(pipe);
    require(WIFEXITED(cap_status) && WEXITSTATUS(cap_status) == 2,
            "a derivation cap of 2 must abort the run with exit 2");
    require(cap_out.find("derivation cap") != std::string::npos,
            "cap error must mention the derivation cap");

    // check --data replaces the workspace datasets for behavioral checks.
    TempWorkspace data_dir("cli_data_dir");
    CmdResult external = run_cli("check " + kFixtures.string() + " --behavioral --data " +
                                 (data_dir.path).string() + " --format json");
    require(external.exit_code == 0, "check --data over copied datasets must be clean");
    require(external.output.find("\"apps_small\"") != std::string::npos,
            "coverage must name the external dataset");
    require(external.output.find("\"structural_violations\": []") != std::string::npos,
            "behavioral-only check still reports empty structural list");

    // check --module restricts the scope to one edge.
    CmdResult scoped = run_cli("check " + kFixtures.string() + " --module MortgageApps --format json");
    require(scoped.exit_code == 0, "scoped check must be clean");
    require(scoped.output.find("\"MortgageApps\"") != std::string::npos &&
                scoped.output.find("\"checked_modules\": [\n    \"MortgageApps\"\n  ]") !=
                    std::string::npos,
            "scoped check must list exactly MortgageApps");

    CmdResult resolved = run_cli("resolve " + kFixtures.string() + " --module PrivateLoanApps");
    require(resolved.exit_code == 0, "resolve must exit 0");
    for (const char* needle : {"R0.1:", "R1:", "R7:", "R9_2:", "non_omitable_output(sValue/2)"})
        require(resolved.output.find(needle) != std::string::npos,
                std::string("resolved output missing ") + needle);
    require(resolved.output.find("extends") == std::string::npos,
            "resolved output must be self-contained");

    CmdResult info = run_cli("info " + kFixtures.string() + " --module LoanApps");
    require(info.output.find("abstract: yes") != std::string::npos, "info must print the verdict");
    CmdResult info2 = run_cli("info " + kFixtures.string() + " --module MortgageApps");
    require(info2.output.find("abstract: no") != std::string::npos, "info must print the verdict");
}

struct Criterion {
    std::string label;
    std::function<void()> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1 use-case reproduction", criterion_use_case},
        {"2 structural mutant kill", criterion_structural_mutants},
        {"3 behavioral mutant kill", criterion_behavioral_mutants},
        {"4 engine oracle equivalence", criterion_engine_oracle},
        {"5 restriction-inheritance transitivity", criterion_restriction_transitivity},
        {"6 change-classification laws", criterion_change_classification},
        {"7 performance sanity", criterion_performance},
        {"8 determinism", criterion_determinism},
        {"extra CLI exit-code contract", extra_cli_contract},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        try {
            c.body();
            std::cout << "[criterion " << c.label << "] PASS\n";
        } catch (const AcceptFail& f) {
            std::cout << "[criterion " << c.label << "] FAIL: " << f.message << "\n";
            ++failures;
        } catch (const std::exception& e) {
            std::cout << "[criterion " << c.label << "] FAIL (exception): " << e.what() << "\n";
            ++failures;
        }
    }
    if (failures == 0)
        std::cout << "all criteria passed\n";
    else
        std::cout << failures << " criteria failed\n";
    return failures;
}
