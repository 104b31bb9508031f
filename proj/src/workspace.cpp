#include "rmod/workspace.hpp"

#include "rmod/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rmod {

std::vector<Dataset> Workspace::dataset_vector() const {
    std::vector<Dataset> out;
    out.reserve(datasets.size());
    for (const auto& [_, d] : datasets) out.push_back(d);
    return out;
}

std::string WorkspaceError::join(const std::vector<std::string>& ds) {
    std::ostringstream out;
    out << "workspace loading failed:";
    for (const auto& d : ds) out << "\n  " << d;
    return out.str();
}

namespace {

Token expect(Lexer& lex, TokenKind kind, const std::string& what) {
    if (lex.peek().kind != kind)
        lex.fail("expected " + what);
    return lex.next();
}

Token expect_keyword(Lexer& lex, const std::string& word) {
    if (lex.peek().kind != TokenKind::Ident || lex.peek().text != word)
        lex.fail("expected '" + word + "'");
    return lex.next();
}

bool at_keyword(const Lexer& lex, const std::string& word) {
    return lex.peek().kind == TokenKind::Ident && lex.peek().text == word;
}

Predicate parse_pred_ref(Lexer& lex) {
    Token name = expect(lex, TokenKind::Ident, "a predicate name");
    expect(lex, TokenKind::Slash, "'/' in predicate reference");
    Token arity = expect(lex, TokenKind::Number, "an arity");
    if (boost::multiprecision::denominator(arity.number) != 1 || arity.number < 0)
        throw ParseError(arity.pos, "arity must be a non-negative integer");
    return Predicate{name.text, static_cast<std::size_t>(boost::multiprecision::numerator(arity.number))};
}

void parse_io_section(Lexer& lex, std::set<Predicate>& added, std::set<Predicate>& removed) {
    expect(lex, TokenKind::LBrace, "'{'");
    while (lex.peek().kind != TokenKind::RBrace) {
        bool add;
        if (at_keyword(lex, "add")) add = true;
        else if (at_keyword(lex, "remove")) add = false;
        else lex.fail("expected 'add' or 'remove'");
        lex.next();
        while (true) {
            Predicate p = parse_pred_ref(lex);
            (add ? added : removed).insert(std::move(p));
            if (lex.peek().kind != TokenKind::Comma) break;
            lex.next();
        }
        expect(lex, TokenKind::Semicolon, "';'");
    }
    lex.next();
}

void parse_restrict_section(Lexer& lex, std::set<Restriction>& out) {
    expect(lex, TokenKind::LBrace, "'{'");
    while (lex.peek().kind != TokenKind::RBrace) {
        Token kw = expect(lex, TokenKind::Ident, "a restriction keyword");
        Restriction r{RestrictionKind::NoAdditionalInput, std::nullopt};
        if (kw.text == "no_additional_input") {
            r.kind = RestrictionKind::NoAdditionalInput;
        } else if (kw.text == "no_additional_output") {
            r.kind = RestrictionKind::NoAdditionalOutput;
        } else {
            if (kw.text == "non_omitable_input") r.kind = RestrictionKind::NonOmitableInput;
            else if (kw.text == "non_omitable_output") r.kind = RestrictionKind::NonOmitableOutput;
            else if (kw.text == "non_growable") r.kind = RestrictionKind::NonGrowable;
            else if (kw.text == "non_shrinkable") r.kind = RestrictionKind::NonShrinkable;
            else throw ParseError(kw.pos, "unknown restriction '" + kw.text + "'");
            expect(lex, TokenKind::LParen, "'('");
            r.predicate = parse_pred_ref(lex);
            expect(lex, TokenKind::RParen, "')'");
        }
        expect(lex, TokenKind::Semicolon, "';'");
        out.insert(std::move(r));
    }
    lex.next();
}

void parse_rules_section(Lexer& lex, RuleModule& m) {
    expect(lex, TokenKind::LBrace, "'{'");
    std::set<std::string> ids;
    while (lex.peek().kind != TokenKind::RBrace) {
        if (at_keyword(lex, "add")) {
            lex.next();
            Token id_tok = lex.peek();
            Rule r = detail::parse_rule_body(lex);
            check_rule_safety(r);
            if (!ids.insert(r.id).second)
                throw ParseError(id_tok.pos, "duplicate rule id '" + r.id + "'");
            m.rules_added.push_back(std::move(r));
            if (lex.peek().kind == TokenKind::Semicolon) lex.next();
        } else if (at_keyword(lex, "remove")) {
            lex.next();
            Token id = expect(lex, TokenKind::Ident, "a rule id");
            expect(lex, TokenKind::Semicolon, "';'");
            m.rules_removed.insert(id.text);
        } else {
            lex.fail("expected 'add' or 'remove'");
        }
    }
    lex.next();
}

} // namespace

RuleModule parse_module_file(std::string_view text, const std::string& file) {
    Lexer lex(text, file);
    expect_keyword(lex, "module");
    Token id = expect(lex, TokenKind::Ident, "a module id");
    RuleModule m;
    m.id = id.text;
    if (at_keyword(lex, "extends")) {
        lex.next();
        m.parent = expect(lex, TokenKind::Ident, "a parent module id").text;
    }
    expect(lex, TokenKind::LBrace, "'{'");
    std::set<std::string> seen_sections;
    while (lex.peek().kind != TokenKind::RBrace) {
        Token section = expect(lex, TokenKind::Ident, "a section (input, output, restrict, rules)");
        if (!seen_sections.insert(section.text).second)
            throw ParseError(section.pos, "duplicate section '" + section.text + "'");
        if (section.text == "input")
            parse_io_section(lex, m.inputs_added, m.inputs_removed);
        else if (section.text == "output")
            parse_io_section(lex, m.outputs_added, m.outputs_removed);
        else if (section.text == "restrict")
            parse_restrict_section(lex, m.restrictions_added);
        else if (section.text == "rules")
            parse_rules_section(lex, m);
        else
            throw ParseError(section.pos, "unknown section '" + section.text + "'");
    }
    lex.next();
    if (lex.peek().kind != TokenKind::End)
        lex.fail("trailing input after the module declaration");
    return m;
}

namespace {

void render_pred_list(std::ostringstream& out, const char* verb, const std::set<Predicate>& preds) {
    if (preds.empty()) return;
    out << "    " << verb << " ";
    bool first = true;
    for (const auto& p : preds) {
        if (!first) out << ", ";
        out << p.to_string();
        first = false;
    }
    out << ";\n";
}

void render_io_section(std::ostringstream& out, const char* name, const std::set<Predicate>& added,
                       const std::set<Predicate>& removed) {
    if (added.empty() && removed.empty()) return;
    out << "  " << name << " {\n";
    render_pred_list(out, "add", added);
    render_pred_list(out, "remove", removed);
    out << "  }\n";
}

void render_restrict_section(std::ostringstream& out, const std::set<Restriction>& restrictions) {
    if (restrictions.empty()) return;
    out << "  restrict {\n";
    for (const auto& r : restrictions)
        out << "    " << r.to_string() << ";\n";
    out << "  }\n";
}

void render_rules_section(std::ostringstream& out, std::vector<Rule> added,
                          const std::set<std::string>& removed) {
    if (added.empty() && removed.empty()) return;
    std::sort(added.begin(), added.end(), [](const Rule& a, const Rule& b) { return a.id < b.id; });
    out << "  rules {\n";
    for (const auto& r : added)
        out << "    add " << render_rule(r) << "\n";
    for (const auto& rid : removed)
        out << "    remove " << rid << ";\n";
    out << "  }\n";
}

} // namespace

std::string render_module(const RuleModule& m) {
    std::ostringstream out;
    out << "module " << m.id;
    if (m.parent) out << " extends " << *m.parent;
    out << " {\n";
    render_io_section(out, "input", m.inputs_added, m.inputs_removed);
    render_io_section(out, "output", m.outputs_added, m.outputs_removed);
    render_restrict_section(out, m.restrictions_added);
    render_rules_section(out, m.rules_added, m.rules_removed);
    out << "}\n";
    return out.str();
}

std::string render_resolved(const ResolvedModule& rm) {
    RuleModule flat;
    flat.id = rm.id;
    flat.inputs_added = rm.inputs;
    flat.outputs_added = rm.outputs;
    flat.restrictions_added = rm.restrictions;
    for (const auto& [_, r] : rm.rules) flat.rules_added.push_back(r);
    return render_module(flat);
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

Workspace load_workspace(const std::vector<std::filesystem::path>& paths) {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> diagnostics;
    for (const auto& path : paths) {
        if (std::filesystem::is_directory(path)) {
            for (const auto& entry : std::filesystem::directory_iterator(path))
                if (entry.is_regular_file()) files.push_back(entry.path());
        } else if (std::filesystem::exists(path)) {
            files.push_back(path);
        } else {
            diagnostics.push_back(path.string() + ": no such file or directory");
        }
    }
    std::sort(files.begin(), files.end());

    Workspace ws;
    for (const auto& file : files) {
        std::string ext = file.extension().string();
        try {
            if (ext == ".rmod") {
                RuleModule m = parse_module_file(read_file(file), file.string());
                SourcePos pos{file.string(), 1, 1};
                auto [it, inserted] = ws.hierarchy.modules.emplace(m.id, std::move(m));
                if (!inserted)
                    diagnostics.push_back(pos.to_string() + ": duplicate module id '" + it->first +
                                          "' (first declared at " + ws.module_locations.at(it->first).to_string() + ")");
                else
                    ws.module_locations.emplace(it->first, pos);
            } else if (ext == ".facts") {
                std::string name = file.stem().string();
                Dataset d = parse_dataset(read_file(file), name, file.string());
                SourcePos pos{file.string(), 1, 1};
                auto [it, inserted] = ws.datasets.emplace(name, std::move(d));
                if (!inserted)
                    diagnostics.push_back(pos.to_string() + ": duplicate dataset name '" + name + "'");
                else
                    ws.dataset_locations.emplace(name, pos);
            }
        } catch (const ParseError& e) {
            diagnostics.push_back(e.what());
        } catch (const SafetyError& e) {
            diagnostics.push_back(file.string() + ": " + e.what());
        } catch (const std::exception& e) {
            diagnostics.push_back(file.string() + ": " + e.what());
        }
    }

    if (diagnostics.empty()) {
        for (const auto& issue : validate_hierarchy(ws.hierarchy)) {
            auto loc = ws.module_locations.find(issue.module);
            std::string where = loc == ws.module_locations.end() ? issue.module : loc->second.to_string();
            diagnostics.push_back(where + ": " + to_string(issue.code) + ": " + issue.detail);
        }
    }
    if (diagnostics.empty()) {
        for (const auto& [id, _] : ws.hierarchy.modules) {
            try {
                resolve(ws.hierarchy, id);
                for (const auto& issue : validate_restrictions(ws.hierarchy, id))
                    diagnostics.push_back(ws.module_locations.at(id).to_string() + ": " + issue.message);
            } catch (const ResolveError& e) {
                diagnostics.push_back(ws.module_locations.at(id).to_string() + ": " + e.what());
            }
        }
    }
    if (diagnostics.empty()) {
        // Non-stratifiable modules are rejected at load.
        for (const auto& [id, _] : ws.hierarchy.modules) {
            try {
                stratify(resolve(ws.hierarchy, id).rule_vector());
            } catch (const StratifyError& e) {
                diagnostics.push_back(ws.module_locations.at(id).to_string() + ": module '" + id +
                                      "': " + e.what());
            }
        }
    }
    if (!diagnostics.empty())
        throw WorkspaceError(std::move(diagnostics));
    return ws;
}

Workspace load_workspace(const std::filesystem::path& path) {
    return load_workspace(std::vector<std::filesystem::path>{path});
}

} // namespace rmod
