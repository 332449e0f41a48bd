#include "pld/formula.hpp"

#include <algorithm>
#include <cctype>

namespace pld::logic {

FormulaPtr f_edge(std::string x, std::string y) {
    return std::make_shared<Formula>(Formula{Kind::AtomE, std::move(x), std::move(y), nullptr, nullptr});
}
FormulaPtr f_eq(std::string x, std::string y) {
    return std::make_shared<Formula>(Formula{Kind::AtomEq, std::move(x), std::move(y), nullptr, nullptr});
}
FormulaPtr f_not(FormulaPtr a) {
    return std::make_shared<Formula>(Formula{Kind::Not, {}, {}, std::move(a), nullptr});
}
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{Kind::And, {}, {}, std::move(a), std::move(b)});
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{Kind::Or, {}, {}, std::move(a), std::move(b)});
}
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{Kind::Implies, {}, {}, std::move(a), std::move(b)});
}
FormulaPtr f_exists(std::string var, FormulaPtr body) {
    return std::make_shared<Formula>(Formula{Kind::Exists, std::move(var), {}, std::move(body), nullptr});
}
FormulaPtr f_forall(std::string var, FormulaPtr body) {
    return std::make_shared<Formula>(Formula{Kind::Forall, std::move(var), {}, std::move(body), nullptr});
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
    enum Type { Var, KwExists, KwForall, UpperE, LParen, RParen, Comma, Dot, Eq, Bang, Amp, Pipe, Arrow, End };
    Type type;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= s_.size()) {
            tok_ = {Token::End, "", start};
            return;
        }
        char c = s_[i_];
        auto single = [&](Token::Type t) {
            ++i_;
            tok_ = {t, std::string(1, c), start};
        };
        switch (c) {
            case '(': single(Token::LParen); return;
            case ')': single(Token::RParen); return;
            case ',': single(Token::Comma); return;
            case '.': single(Token::Dot); return;
            case '=': single(Token::Eq); return;
            case '!': single(Token::Bang); return;
            case '&': single(Token::Amp); return;
            case '|': single(Token::Pipe); return;
            default: break;
        }
        if (c == '-') {
            if (i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
                i_ += 2;
                tok_ = {Token::Arrow, "->", start};
                return;
            }
            throw ParseError(start, "expected '->'");
        }
        if (c == 'E') {
            ++i_;
            tok_ = {Token::UpperE, "E", start};
            return;
        }
        if (std::islower(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && (std::islower(static_cast<unsigned char>(s_[j])) ||
                                     std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) {
                ++j;
            }
            std::string word = s_.substr(i_, j - i_);
            i_ = j;
            if (word == "exists") {
                tok_ = {Token::KwExists, word, start};
            } else if (word == "forall") {
                tok_ = {Token::KwForall, word, start};
            } else {
                tok_ = {Token::Var, word, start};
            }
            return;
        }
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token tok_{Token::End, "", 0};
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) {}

    FormulaPtr parse() {
        FormulaPtr f = implication();
        if (lex_.peek().type != Token::End) {
            throw ParseError(lex_.peek().pos, "trailing input after formula");
        }
        return f;
    }

private:
    FormulaPtr implication() {
        FormulaPtr lhs = disjunction();
        if (lex_.peek().type == Token::Arrow) {
            lex_.take();
            return f_implies(std::move(lhs), implication());  // right associative
        }
        return lhs;
    }

    FormulaPtr disjunction() {
        FormulaPtr f = conjunction();
        while (lex_.peek().type == Token::Pipe) {
            lex_.take();
            f = f_or(std::move(f), conjunction());
        }
        return f;
    }

    FormulaPtr conjunction() {
        FormulaPtr f = unary();
        while (lex_.peek().type == Token::Amp) {
            lex_.take();
            f = f_and(std::move(f), unary());
        }
        return f;
    }

    FormulaPtr unary() {
        const Token& t = lex_.peek();
        switch (t.type) {
            case Token::Bang:
                lex_.take();
                return f_not(unary());
            case Token::KwExists:
            case Token::KwForall: {
                Token kw = lex_.take();
                Token var = expect(Token::Var, "quantified variable");
                expect(Token::Dot, "'.' after quantified variable");
                // quantifier body extends maximally to the right
                FormulaPtr body = implication();
                return kw.type == Token::KwExists ? f_exists(var.text, std::move(body))
                                                  : f_forall(var.text, std::move(body));
            }
            default:
                return primary();
        }
    }

    FormulaPtr primary() {
        const Token& t = lex_.peek();
        if (t.type == Token::LParen) {
            lex_.take();
            FormulaPtr f = implication();
            expect(Token::RParen, "')'");
            return f;
        }
        if (t.type == Token::UpperE) {
            lex_.take();
            expect(Token::LParen, "'(' after E");
            Token x = expect(Token::Var, "variable");
            expect(Token::Comma, "','");
            Token y = expect(Token::Var, "variable");
            expect(Token::RParen, "')'");
            return f_edge(x.text, y.text);
        }
        if (t.type == Token::Var) {
            Token x = lex_.take();
            expect(Token::Eq, "'=' in equality atom");
            Token y = expect(Token::Var, "variable");
            return f_eq(x.text, y.text);
        }
        throw ParseError(t.pos, "expected a formula");
    }

    Token expect(Token::Type type, const std::string& what) {
        if (lex_.peek().type != type) {
            throw ParseError(lex_.peek().pos, "expected " + what);
        }
        return lex_.take();
    }

    Lexer lex_;
};

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind) {
        case Kind::AtomE:
        case Kind::AtomEq:
            if (!bound.count(f.v1)) out.insert(f.v1);
            if (!bound.count(f.v2)) out.insert(f.v2);
            return;
        case Kind::Not:
            collect_free(*f.lhs, bound, out);
            return;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            collect_free(*f.lhs, bound, out);
            collect_free(*f.rhs, bound, out);
            return;
        case Kind::Exists:
        case Kind::Forall: {
            bool was = bound.count(f.v1) > 0;
            bound.insert(f.v1);
            collect_free(*f.lhs, bound, out);
            if (!was) bound.erase(f.v1);
            return;
        }
    }
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).parse(); }

FormulaPtr parse_sentence(const std::string& text) {
    FormulaPtr f = parse_formula(text);
    auto free = free_variables(*f);
    if (!free.empty()) {
        throw ParseError(0, "unbound variable '" + *free.begin() + "' in sentence");
    }
    return f;
}

std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

// ---------------------------------------------------------------- printing

namespace {

// precedence: -> 1, | 2, & 3, ! 4; quantifiers print at 0 and take parens in
// any tighter context
void print(const Formula& f, int min_prec, std::string& out) {
    switch (f.kind) {
        case Kind::AtomE:
            out += "E(" + f.v1 + "," + f.v2 + ")";
            return;
        case Kind::AtomEq:
            out += f.v1 + " = " + f.v2;
            return;
        case Kind::Not:
            out += "!";
            print(*f.lhs, 4, out);
            return;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies: {
            int prec = f.kind == Kind::And ? 3 : (f.kind == Kind::Or ? 2 : 1);
            const char* op = f.kind == Kind::And ? " & " : (f.kind == Kind::Or ? " | " : " -> ");
            bool paren = prec < min_prec;
            if (paren) out += "(";
            // left operand one level tighter for left-assoc ops, right-assoc for ->
            print(*f.lhs, f.kind == Kind::Implies ? prec + 1 : prec, out);
            out += op;
            print(*f.rhs, f.kind == Kind::Implies ? prec : prec + 1, out);
            if (paren) out += ")";
            return;
        }
        case Kind::Exists:
        case Kind::Forall: {
            bool paren = min_prec > 0;
            if (paren) out += "(";
            out += (f.kind == Kind::Exists ? "exists " : "forall ") + f.v1 + ". ";
            print(*f.lhs, 0, out);
            if (paren) out += ")";
            return;
        }
    }
}

}  // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print(f, 0, out);
    return out;
}

bool structurally_equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind || a.v1 != b.v1 || a.v2 != b.v2) return false;
    if ((a.lhs == nullptr) != (b.lhs == nullptr) || (a.rhs == nullptr) != (b.rhs == nullptr)) return false;
    if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
    return true;
}

int quantifier_rank(const Formula& f) {
    switch (f.kind) {
        case Kind::AtomE:
        case Kind::AtomEq:
            return 0;
        case Kind::Not:
            return quantifier_rank(*f.lhs);
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            return std::max(quantifier_rank(*f.lhs), quantifier_rank(*f.rhs));
        case Kind::Exists:
        case Kind::Forall:
            return 1 + quantifier_rank(*f.lhs);
    }
    return 0;
}

// ---------------------------------------------------------------- evaluation
//
// The AST is compiled to a flat node array with variable slots so the
// quantifier loops run without any name lookups; And/Or chains are flattened
// for short-circuit scans.

namespace {

// Pulls conjuncts that do not mention the bound variable out of existential
// quantifiers (innermost first): exists z.(A & B) == A & exists z.B whenever
// z is not free in A. Sound on every domain size, including empty graphs,
// because falsity is preserved on both sides. This keeps the quantifier
// loops from rescanning conjuncts that earlier loops already fixed.
class ExistsHoister {
public:
    FormulaPtr run(const Formula& f) { return transform(f); }

private:
    FormulaPtr transform(const Formula& f) {
        switch (f.kind) {
            case Kind::AtomE:
            case Kind::AtomEq:
                return std::make_shared<Formula>(f);
            case Kind::Not:
                return f_not(transform(*f.lhs));
            case Kind::And:
                return f_and(transform(*f.lhs), transform(*f.rhs));
            case Kind::Or:
                return f_or(transform(*f.lhs), transform(*f.rhs));
            case Kind::Implies:
                return f_implies(transform(*f.lhs), transform(*f.rhs));
            case Kind::Forall:
                return f_forall(f.v1, transform(*f.lhs));
            case Kind::Exists: {
                FormulaPtr body = transform(*f.lhs);
                if (body->kind != Kind::And) return f_exists(f.v1, std::move(body));
                std::vector<FormulaPtr> parts;
                gather(body, parts);
                std::vector<FormulaPtr> dep, indep;
                for (auto& p : parts) {
                    if (free_variables(*p).count(f.v1)) {
                        dep.push_back(p);
                    } else {
                        indep.push_back(p);
                    }
                }
                if (indep.empty()) return f_exists(f.v1, std::move(body));
                // the quantifier must stay (its truth still asserts a vertex
                // exists), so a dependent witness conjunct always remains
                if (dep.empty()) dep.push_back(f_eq(f.v1, f.v1));
                FormulaPtr inner = dep.front();
                for (std::size_t i = 1; i < dep.size(); ++i) inner = f_and(inner, dep[i]);
                FormulaPtr out = indep.front();
                for (std::size_t i = 1; i < indep.size(); ++i) out = f_and(out, indep[i]);
                return f_and(std::move(out), f_exists(f.v1, std::move(inner)));
            }
        }
        throw std::logic_error("hoist: bad kind");
    }

    static void gather(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
        if (f->kind == Kind::And) {
            gather(f->lhs, out);
            gather(f->rhs, out);
        } else {
            out.push_back(f);
        }
    }
};

enum Op : int { OpEdge, OpNEdge, OpEq, OpNeq, OpNot, OpAnd, OpOr, OpImplies, OpExists, OpForall };

struct CNode {
    int op;
    int a = 0, b = 0;  // atoms: slots; quantifiers: a = slot, b = child; Not: a = child
};

struct Prog {
    std::vector<CNode> nodes;
    std::vector<int> kids;  // child index lists for And/Or
    int root = -1;
    int nslots = 0;
    std::map<std::string, int> free_slots;
};

class Compiler {
public:
    Prog run(const Formula& f) {
        root_scope_.clear();
        prog_ = Prog{};
        prog_.root = compile(f);
        prog_.nslots = next_slot_;
        prog_.free_slots = root_scope_;
        return std::move(prog_);
    }

private:
    int slot_for_free(const std::string& name) {
        auto it = root_scope_.find(name);
        if (it != root_scope_.end()) return it->second;
        int s = next_slot_++;
        root_scope_[name] = s;
        return s;
    }

    int lookup(const std::string& name) {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            if (it->first == name) return it->second;
        }
        return slot_for_free(name);
    }

    int emit(CNode n) {
        prog_.nodes.push_back(n);
        return static_cast<int>(prog_.nodes.size() - 1);
    }

    void flatten(const Formula& f, Kind kind, std::vector<const Formula*>& out) {
        if (f.kind == kind) {
            flatten(*f.lhs, kind, out);
            flatten(*f.rhs, kind, out);
        } else {
            out.push_back(&f);
        }
    }

    int compile(const Formula& f) {
        switch (f.kind) {
            case Kind::AtomE:
                return emit({OpEdge, lookup(f.v1), lookup(f.v2)});
            case Kind::AtomEq:
                return emit({OpEq, lookup(f.v1), lookup(f.v2)});
            case Kind::Not: {
                // fuse negated atoms
                if (f.lhs->kind == Kind::AtomE) {
                    return emit({OpNEdge, lookup(f.lhs->v1), lookup(f.lhs->v2)});
                }
                if (f.lhs->kind == Kind::AtomEq) {
                    return emit({OpNeq, lookup(f.lhs->v1), lookup(f.lhs->v2)});
                }
                int c = compile(*f.lhs);
                return emit({OpNot, c});
            }
            case Kind::And:
            case Kind::Or: {
                std::vector<const Formula*> parts;
                flatten(f, f.kind, parts);
                std::vector<int> ids;
                ids.reserve(parts.size());
                for (const Formula* p : parts) ids.push_back(compile(*p));
                // connectives are commutative, so the scan order is a pure
                // scheduling choice: adjacency atoms short-circuit far more
                // often than (in)equalities, and leaves beat subtrees
                std::stable_sort(ids.begin(), ids.end(), [this](int x, int y) {
                    auto cls = [this](int id) {
                        switch (prog_.nodes[id].op) {
                            case OpEdge:
                            case OpNEdge:
                                return 0;
                            case OpEq:
                            case OpNeq:
                                return 1;
                            default:
                                return 2;
                        }
                    };
                    return cls(x) < cls(y);
                });
                int a = static_cast<int>(prog_.kids.size());
                prog_.kids.insert(prog_.kids.end(), ids.begin(), ids.end());
                int b = static_cast<int>(prog_.kids.size());
                return emit({f.kind == Kind::And ? OpAnd : OpOr, a, b});
            }
            case Kind::Implies: {
                int l = compile(*f.lhs);
                int r = compile(*f.rhs);
                return emit({OpImplies, l, r});
            }
            case Kind::Exists:
            case Kind::Forall: {
                int s = next_slot_++;
                scopes_.emplace_back(f.v1, s);
                int c = compile(*f.lhs);
                scopes_.pop_back();
                return emit({f.kind == Kind::Exists ? OpExists : OpForall, s, c});
            }
        }
        throw std::logic_error("compile: bad kind");
    }

    Prog prog_;
    int next_slot_ = 0;
    std::vector<std::pair<std::string, int>> scopes_;
    std::map<std::string, int> root_scope_;
};

struct Evaluator {
    const CNode* nodes;
    const int* kids;
    const std::uint64_t* bits;
    std::size_t words;
    int n;
    int* slots;  // 0-based vertex indices

    bool adjacent(int u0, int v0) const {
        return (bits[static_cast<std::size_t>(u0) * words + static_cast<std::size_t>(v0 >> 6)] >>
                (v0 & 63)) &
               1u;
    }

    inline bool leaf(int idx) const {
        const CNode& nd = nodes[idx];
        switch (nd.op) {
            case OpEdge:
                return adjacent(slots[nd.a], slots[nd.b]);
            case OpNEdge:
                return !adjacent(slots[nd.a], slots[nd.b]);
            case OpEq:
                return slots[nd.a] == slots[nd.b];
            case OpNeq:
                return slots[nd.a] != slots[nd.b];
            default:
                return eval(idx);
        }
    }

    bool eval(int idx) const {
        const CNode& nd = nodes[idx];
        switch (nd.op) {
            case OpEdge:
                return adjacent(slots[nd.a], slots[nd.b]);
            case OpNEdge:
                return !adjacent(slots[nd.a], slots[nd.b]);
            case OpEq:
                return slots[nd.a] == slots[nd.b];
            case OpNeq:
                return slots[nd.a] != slots[nd.b];
            case OpNot:
                return !eval(nd.a);
            case OpAnd:
                for (int i = nd.a; i < nd.b; ++i) {
                    if (!leaf(kids[i])) return false;
                }
                return true;
            case OpOr:
                for (int i = nd.a; i < nd.b; ++i) {
                    if (leaf(kids[i])) return true;
                }
                return false;
            case OpImplies:
                return !eval(nd.a) || eval(nd.b);
            case OpExists:
                for (int v = 0; v < n; ++v) {
                    slots[nd.a] = v;
                    if (eval(nd.b)) return true;
                }
                return false;
            case OpForall:
                for (int v = 0; v < n; ++v) {
                    slots[nd.a] = v;
                    if (!eval(nd.b)) return false;
                }
                return true;
            default:
                throw std::logic_error("eval: bad op");
        }
    }
};

}  // namespace

struct CompiledFormula::Impl {
    Prog prog;
};

CompiledFormula::CompiledFormula(const Formula& f)
    : impl_(std::make_shared<Impl>(Impl{Compiler{}.run(*ExistsHoister{}.run(f))})) {}

bool CompiledFormula::evaluate(const Graph& g, const Assignment& a) const {
    const Prog& prog = impl_->prog;
    std::vector<int> slots(std::max(prog.nslots, 1), 0);
    for (const auto& [name, slot] : prog.free_slots) {
        auto it = a.find(name);
        if (it == a.end()) {
            throw std::invalid_argument("evaluate: no assignment for free variable '" + name + "'");
        }
        g.check_vertex(it->second);
        slots[slot] = it->second - 1;
    }
    const std::uint64_t* bits = g.n() > 0 ? g.row_bits(1).data() : nullptr;
    Evaluator ev{prog.nodes.data(), prog.kids.data(), bits, g.words_per_row(), g.n(), slots.data()};
    return ev.eval(prog.root);
}

bool evaluate(const Graph& g, const Formula& f, const Assignment& a) {
    return CompiledFormula(f).evaluate(g, a);
}

}  // namespace pld::logic
