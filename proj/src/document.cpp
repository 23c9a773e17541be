#include "whtor/document.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace whtor {

ParseError::ParseError(int line_, int column_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ", column " +
                         std::to_string(column_) + ": " + msg),
      line(line_),
      column(column_) {}

InvariantViolation::InvariantViolation(int line_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}

namespace {

std::string strip_comment(const std::string& s) {
    auto pos = s.find('#');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

long parse_long(const std::string& s, int line, const std::string& what) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, 1, "expected an integer for " + what + ", got '" + s + "'");
    }
}

// Recursive-descent scanner for `3*t^2 - 1*g*t^-1 + 1` literals.
struct ElementScanner {
    const GroupSpecPtr& spec;
    const std::vector<std::string>& names;
    const std::string& text;
    int line;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(line, static_cast<int>(pos) + 1, msg);
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    mpz_class scan_integer() {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            fail("expected an integer");
        return mpz_class(text.substr(start, pos - start));
    }
    std::string scan_name() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected a generator name or integer");
        return text.substr(start, pos - start);
    }
    // coefficient and/or generator powers joined by '*'
    std::pair<mpz_class, GroupElement> scan_term() {
        mpz_class coeff = 1;
        GroupElement g = spec->identity();
        bool first = true;
        while (true) {
            skip_ws();
            if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])))) {
                coeff *= scan_integer();
            } else {
                size_t before = pos;
                std::string name = scan_name();
                auto it = std::find(names.begin(), names.end(), name);
                if (it == names.end()) {
                    pos = before;
                    fail("unknown generator '" + name + "'");
                }
                long expo = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    expo = static_cast<long>(scan_integer().get_si());
                }
                int idx = static_cast<int>(it - names.begin());
                GroupElement p = spec->identity();
                p.exps[idx] = expo;
                g = spec->multiply(g, spec->normalize(p));
            }
            first = false;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        (void)first;
        return {coeff, spec->normalize(std::move(g))};
    }
    GRElement scan_expr() {
        GRElement e(spec);
        int sign = 1;
        skip_ws();
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        }
        while (true) {
            auto [coeff, g] = scan_term();
            e.add_term(g, coeff * sign);
            skip_ws();
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
                sign = text[pos] == '-' ? -1 : 1;
                ++pos;
                continue;
            }
            break;
        }
        if (!at_end()) fail("trailing characters in element literal");
        return e;
    }
};

struct PendingComplex {
    std::string name;
    int lo = 0;
    std::vector<int> ranks;
    std::map<int, GRMatrix> diffs;
    int line = 0;
};

struct PendingMap {
    std::string name, src, tgt;
    std::map<int, GRMatrix> mats;
    int line = 0;
};

struct Parser {
    ModelDocument doc;
    std::vector<std::string> names;  // generator names for element literals
    std::optional<PendingComplex> pc;
    std::optional<PendingMap> pm;

    const GroupSpecPtr& group(int line) {
        if (!doc.group) throw ParseError(line, 1, "no group declared yet");
        return doc.group;
    }

    void finalize_pending() {
        if (pc) {
            auto& p = *pc;
            std::vector<GRMatrix> diffs;
            for (size_t i = 1; i < p.ranks.size(); ++i) {
                int k = p.lo + static_cast<int>(i);
                auto it = p.diffs.find(k);
                if (it != p.diffs.end())
                    diffs.push_back(it->second);
                else
                    diffs.push_back(GRMatrix(doc.group, p.ranks[i - 1], p.ranks[i]));
            }
            for (auto& [k, m] : p.diffs)
                if (k <= p.lo || k > p.lo + static_cast<int>(p.ranks.size()) - 1)
                    throw ParseError(p.line, 1, "differential degree " + std::to_string(k) +
                                                    " outside the declared range");
            try {
                doc.complexes.emplace(p.name,
                                      BasedChainComplex(doc.group, p.lo, p.ranks, diffs));
            } catch (const std::invalid_argument& e) {
                throw InvariantViolation(p.line, "complex " + p.name + ": " + e.what());
            }
            pc.reset();
        }
        if (pm) {
            auto& p = *pm;
            auto si = doc.complexes.find(p.src);
            auto ti = doc.complexes.find(p.tgt);
            if (si == doc.complexes.end())
                throw ParseError(p.line, 1, "unknown complex '" + p.src + "'");
            if (ti == doc.complexes.end())
                throw ParseError(p.line, 1, "unknown complex '" + p.tgt + "'");
            try {
                doc.maps.emplace(p.name, ChainMap(si->second, ti->second, p.mats));
            } catch (const std::invalid_argument& e) {
                throw InvariantViolation(p.line, "map " + p.name + ": " + e.what());
            }
            pm.reset();
        }
    }

    PoincarePairData make_pair(const std::string& text, int line) {
        std::string s = trim(text);
        auto open = s.find('(');
        if (open == std::string::npos || s.back() != ')')
            throw ParseError(line, 1, "pair literal must look like builtin(args)");
        std::string head = s.substr(0, open);
        std::string inner = s.substr(open + 1, s.size() - open - 2);
        auto wrap = [&](auto&& fn) -> PoincarePairData {
            try {
                return fn();
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception& e) {
                throw InvariantViolation(line, std::string("pair construction: ") + e.what());
            }
        };
        if (head == "lens") {
            auto semi = inner.find(';');
            if (semi == std::string::npos)
                throw ParseError(line, 1, "lens literal needs lens(order; rotations)");
            long order = parse_long(trim(inner.substr(0, semi)), line, "lens order");
            std::vector<long> rot;
            std::istringstream rs(inner.substr(semi + 1));
            std::string piece;
            while (std::getline(rs, piece, ','))
                rot.push_back(parse_long(trim(piece), line, "lens rotation"));
            return wrap([&] { return lens_pair(order, rot); });
        }
        std::vector<std::string> args;
        {
            std::istringstream as(inner);
            std::string piece;
            while (std::getline(as, piece, ',')) args.push_back(trim(piece));
            if (inner.empty()) args.clear();
        }
        auto arg_count = [&](size_t n) {
            if (args.size() != n)
                throw ParseError(line, 1, head + " takes " + std::to_string(n) + " argument(s)");
        };
        if (head == "sphere") {
            arg_count(1);
            return wrap([&] { return sphere_pair(static_cast<int>(parse_long(args[0], line, "dimension"))); });
        }
        if (head == "sphere_over") {
            arg_count(1);
            return wrap([&] {
                return sphere_pair_over(group(line),
                                        static_cast<int>(parse_long(args[0], line, "dimension")));
            });
        }
        if (head == "disc") {
            arg_count(1);
            return wrap([&] { return disc_pair(static_cast<int>(parse_long(args[0], line, "dimension"))); });
        }
        if (head == "disc_over") {
            arg_count(1);
            return wrap([&] {
                return disc_pair_over(group(line),
                                      static_cast<int>(parse_long(args[0], line, "dimension")));
            });
        }
        if (head == "surface") {
            arg_count(1);
            return wrap([&] { return surface_pair(static_cast<int>(parse_long(args[0], line, "genus"))); });
        }
        if (head == "product") {
            arg_count(2);
            auto a = doc.pairs.find(args[0]);
            auto b = doc.pairs.find(args[1]);
            if (a == doc.pairs.end()) throw ParseError(line, 1, "unknown pair '" + args[0] + "'");
            if (b == doc.pairs.end()) throw ParseError(line, 1, "unknown pair '" + args[1] + "'");
            return wrap([&] { return product_pair(a->second, b->second); });
        }
        if (head == "twist") {
            arg_count(3);
            auto a = doc.pairs.find(args[0]);
            if (a == doc.pairs.end()) throw ParseError(line, 1, "unknown pair '" + args[0] + "'");
            const auto& pspec = a->second.spec;
            GRElement u = parse_element(pspec, pspec->generator_names(), args[1], line);
            int deg = static_cast<int>(parse_long(args[2], line, "twist degree"));
            return wrap([&] { return unit_twisted_pair(a->second, u, deg); });
        }
        throw ParseError(line, 1, "unknown pair builtin '" + head + "'");
    }

    void handle(const std::string& raw, int line) {
        std::string body = trim(strip_comment(raw));
        if (body.empty()) return;
        auto toks = split_ws(body);
        const std::string& kw = toks[0];
        if (kw == "d" || kw == "at") {
            // handled below with the matrix tail
        } else {
            finalize_pending();
        }
        if (kw == "group") {
            if (doc.group) throw ParseError(line, 1, "group declared twice");
            if (toks.size() < 2) throw ParseError(line, 1, "group needs a kind");
            size_t name_start;
            if (toks[1] == "trivial") {
                doc.group = GroupSpec::trivial();
                name_start = 2;
            } else if (toks[1] == "cyclic") {
                if (toks.size() < 3) throw ParseError(line, 1, "cyclic needs an order");
                doc.group = GroupSpec::cyclic(parse_long(toks[2], line, "order"));
                name_start = 3;
            } else if (toks[1] == "free_abelian") {
                if (toks.size() < 3) throw ParseError(line, 1, "free_abelian needs a rank");
                doc.group = GroupSpec::free_abelian(
                    static_cast<int>(parse_long(toks[2], line, "rank")));
                name_start = 3;
            } else if (toks[1] == "infinite_cyclic") {
                doc.group = GroupSpec::infinite_cyclic();
                name_start = 2;
            } else {
                throw ParseError(line, 1, "unknown group kind '" + toks[1] + "'");
            }
            names = doc.group->generator_names();
            std::vector<std::string> custom(toks.begin() + name_start, toks.end());
            if (!custom.empty()) {
                if (custom.size() != names.size())
                    throw ParseError(line, 1, "expected " + std::to_string(names.size()) +
                                                  " generator name(s)");
                names = custom;
            }
            return;
        }
        if (kw == "orientation") {
            auto g = group(line);
            std::vector<int> w;
            for (size_t i = 1; i < toks.size(); ++i)
                w.push_back(static_cast<int>(parse_long(toks[i], line, "orientation sign")));
            if (static_cast<int>(w.size()) != g->num_generators())
                throw ParseError(line, 1, "one orientation sign per generator required");
            for (int s : w)
                if (s != 1 && s != -1) throw ParseError(line, 1, "orientation signs are +1 or -1");
            switch (g->kind()) {
                case GroupKind::CyclicFinite:
                    doc.group = GroupSpec::cyclic(g->cyclic_order(), w[0]);
                    break;
                case GroupKind::FreeAbelian:
                    doc.group = GroupSpec::free_abelian(g->rank(), w);
                    break;
                case GroupKind::InfiniteCyclic:
                    doc.group = GroupSpec::infinite_cyclic(w[0]);
                    break;
                default:
                    throw ParseError(line, 1, "orientation unsupported for this group kind");
            }
            return;
        }
        if (kw == "alpha") {
            auto g = group(line);
            std::string rest = trim(body.substr(kw.size()));
            std::vector<std::vector<long>> rows;
            if (!rest.empty() && rest.front() == '[') {
                if (rest.back() != ']') throw ParseError(line, 1, "unterminated alpha matrix");
                std::istringstream rs(rest.substr(1, rest.size() - 2));
                std::string rowtext;
                while (std::getline(rs, rowtext, ';')) {
                    std::vector<long> row;
                    for (auto& t : split_ws(rowtext)) row.push_back(parse_long(t, line, "alpha entry"));
                    rows.push_back(std::move(row));
                }
            } else {
                rows.push_back({parse_long(rest, line, "alpha")});
            }
            doc.alpha = std::move(rows);
            // Validate through the semidirect constructor.
            try {
                (void)GroupSpec::semidirect_with_z(g, doc.alpha);
            } catch (const std::exception& e) {
                throw InvariantViolation(line, std::string("alpha: ") + e.what());
            }
            return;
        }
        if (kw == "element") {
            if (toks.size() < 3 || toks[2] != "=")
                throw ParseError(line, 1, "element syntax: element <name> = <expr>");
            auto eq = body.find('=');
            GRElement e = parse_element(group(line), names, body.substr(eq + 1), line);
            if (!doc.elements.emplace(toks[1], std::move(e)).second)
                throw ParseError(line, 1, "element '" + toks[1] + "' declared twice");
            return;
        }
        if (kw == "complex") {
            if (toks.size() < 5 || toks[2] != "lo" || toks[4] != "ranks")
                throw ParseError(line, 1, "complex syntax: complex <name> lo <k> ranks <r...>");
            if (doc.complexes.count(toks[1]))
                throw ParseError(line, 1, "complex '" + toks[1] + "' declared twice");
            PendingComplex p;
            p.name = toks[1];
            p.lo = static_cast<int>(parse_long(toks[3], line, "lo"));
            for (size_t i = 5; i < toks.size(); ++i)
                p.ranks.push_back(static_cast<int>(parse_long(toks[i], line, "rank")));
            if (p.ranks.empty()) throw ParseError(line, 1, "complex needs at least one rank");
            p.line = line;
            pc = std::move(p);
            return;
        }
        if (kw == "d" || kw == "at") {
            if (kw == "d" && !pc) throw ParseError(line, 1, "'d' outside a complex block");
            if (kw == "at" && !pm) throw ParseError(line, 1, "'at' outside a map block");
            if (toks.size() < 2) throw ParseError(line, 1, "'" + kw + "' needs a degree");
            int k = static_cast<int>(parse_long(toks[1], line, "degree"));
            auto open = body.find('[');
            if (open == std::string::npos) throw ParseError(line, 1, "expected a matrix literal");
            GRMatrix m = parse_matrix(group(line), names, body.substr(open), line);
            auto& slot = kw == "d" ? pc->diffs : pm->mats;
            if (!slot.emplace(k, std::move(m)).second)
                throw ParseError(line, 1, "degree " + std::to_string(k) + " given twice");
            return;
        }
        if (kw == "map") {
            if (toks.size() != 4)
                throw ParseError(line, 1, "map syntax: map <name> <src> <tgt>");
            if (doc.maps.count(toks[1]))
                throw ParseError(line, 1, "map '" + toks[1] + "' declared twice");
            pm = PendingMap{toks[1], toks[2], toks[3], {}, line};
            return;
        }
        if (kw == "pair") {
            if (toks.size() < 4 || toks[2] != "=")
                throw ParseError(line, 1, "pair syntax: pair <name> = builtin(args)");
            if (doc.pairs.count(toks[1]))
                throw ParseError(line, 1, "pair '" + toks[1] + "' declared twice");
            auto eq = body.find('=');
            doc.pairs.emplace(toks[1], make_pair(body.substr(eq + 1), line));
            return;
        }
        if (kw == "task") {
            if (toks.size() < 2) throw ParseError(line, 1, "task needs an operation");
            DocumentTask t;
            t.kind = toks[1];
            t.args.assign(toks.begin() + 2, toks.end());
            t.line = line;
            doc.tasks.push_back(std::move(t));
            return;
        }
        throw ParseError(line, 1, "unknown directive '" + kw + "'");
    }

    void validate_tasks() {
        for (const auto& t : doc.tasks) {
            auto need_map = [&](const std::string& n) {
                if (!doc.maps.count(n))
                    throw ParseError(t.line, 1, "task references unknown map '" + n + "'");
            };
            auto argc = [&](size_t n) {
                if (t.args.size() != n)
                    throw ParseError(t.line, 1, "task " + t.kind + " takes " +
                                                    std::to_string(n) + " argument(s)");
            };
            auto check_expect = [&] {
                if (t.args.size() == 1) return;
                if (t.args.size() != 3 || t.args[1] != "expect" ||
                    (t.args[2] != "trivial" && t.args[2] != "nontrivial"))
                    throw ParseError(t.line, 1, "task " + t.kind +
                                                    " takes <name> [expect trivial|nontrivial]");
            };
            if (t.kind == "torsion" || t.kind == "invariants") {
                check_expect();
                need_map(t.args[0]);
            } else if (t.kind == "rho") {
                check_expect();
                if (!doc.pairs.count(t.args[0]))
                    throw ParseError(t.line, 1, "task references unknown pair '" + t.args[0] + "'");
            } else if (t.kind == "glue") {
                argc(2);
                (void)parse_long(t.args[0], t.line, "dimension");
                if (t.args[1] != "0" && !doc.elements.count(t.args[1]))
                    throw ParseError(t.line, 1,
                                     "task references unknown element '" + t.args[1] + "'");
                if (!doc.group) throw ParseError(t.line, 1, "glue task needs a group");
            } else if (t.kind == "s1") {
                argc(1);
                need_map(t.args[0]);
            } else if (t.kind == "transfer") {
                argc(2);
                need_map(t.args[0]);
                long chi = parse_long(t.args[1], t.line, "Euler characteristic");
                if (chi < 0 || chi > 2)
                    throw ParseError(t.line, 1, "transfer chi must be 0, 1 or 2");
            } else {
                throw ParseError(t.line, 1, "unknown task kind '" + t.kind + "'");
            }
        }
    }
};

}  // namespace

GRElement parse_element(const GroupSpecPtr& spec, const std::vector<std::string>& names,
                        const std::string& text, int line) {
    ElementScanner sc{spec, names, text, line};
    if (sc.at_end()) throw ParseError(line, 1, "empty element literal");
    return sc.scan_expr();
}

GRMatrix parse_matrix(const GroupSpecPtr& spec, const std::vector<std::string>& names,
                      const std::string& text, int line) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError(line, 1, "matrix literal must be enclosed in [ ]");
    std::string inner = trim(s.substr(1, s.size() - 2));
    if (inner.empty()) return GRMatrix(spec, 0, 0);
    std::vector<std::vector<GRElement>> rows;
    std::istringstream rs(inner);
    std::string rowtext;
    while (std::getline(rs, rowtext, ';')) {
        std::vector<GRElement> row;
        std::istringstream es(rowtext);
        std::string entry;
        while (std::getline(es, entry, ','))
            row.push_back(parse_element(spec, names, entry, line));
        rows.push_back(std::move(row));
    }
    GRMatrix m(spec, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw ParseError(line, 1, "ragged matrix literal");
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return m;
}

ModelDocument parse_document(const std::string& text) {
    Parser p;
    std::istringstream is(text);
    std::string raw, logical;
    int line = 0, start_line = 0;
    int depth = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string body = strip_comment(raw);
        if (logical.empty()) start_line = line;
        logical += (logical.empty() ? "" : " ") + body;
        for (char c : body) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
        }
        if (depth > 0) continue;  // matrix literal continues on the next line
        if (depth < 0) throw ParseError(line, 1, "unbalanced ']'");
        p.handle(logical, start_line);
        logical.clear();
    }
    if (depth != 0) throw ParseError(line, 1, "unterminated matrix literal");
    if (!logical.empty()) p.handle(logical, start_line);
    p.finalize_pending();
    p.validate_tasks();
    return std::move(p.doc);
}

ModelDocument parse_document_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

}  // namespace whtor
