#pragma once

// Set-expression language:
//
//   expr := term (('|' | '&' | '\') term)*
//   term := atom | atom '>>' nat | atom '<<' nat
//   atom := '{' nat (',' nat)* '}' | 'ap(' nat ',' nat ')'
//         | 'per(' bits ';' bits ')' | 'interval(' nat ',' nat ')'
//         | 'N' | 'empty' | ident | '(' expr ')'
//
// '>>' is the rightward shift A+k, '<<' the leftward shift A-k.  Binary
// operators are left associative with no relative precedence: mixing two
// different operators at one level requires parentheses.

#include <bit>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "felab/natset.hpp"

namespace felab {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t pos, const std::string& expected)
        : std::runtime_error("syntax error at position " + std::to_string(pos) +
                             ": expected " + expected),
          position(pos),
          expected(expected) {}
    std::size_t position;
    std::string expected;
};

// ---------------------------------------------------------------------------
// AST

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
    enum class Kind { Literal, Ap, Per, Interval, Naturals, Empty, Named, Shift, Binop };
    Kind kind;
    std::vector<u64> nats;          // Literal elements; Ap/Interval params
    std::string transient, mask;    // Per
    std::string name;               // Named
    char op = 0;                    // Binop: '|' '&' '\' ; Shift: '>' (right) or '<' (left)
    u64 amount = 0;                 // Shift
    std::vector<AstPtr> children;
};

inline bool ast_equal(const AstPtr& a, const AstPtr& b) {
    if (a->kind != b->kind || a->nats != b->nats || a->transient != b->transient ||
        a->mask != b->mask || a->name != b->name || a->op != b->op || a->amount != b->amount ||
        a->children.size() != b->children.size())
        return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!ast_equal(a->children[i], b->children[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    AstPtr parse() {
        AstPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input");
        return e;
    }

private:
    AstPtr expr() {
        AstPtr left = term();
        char chain_op = 0;
        while (true) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c != '|' && c != '&' && c != '\\') break;
            if (chain_op && c != chain_op)
                throw SyntaxError(pos_, "parentheses (operators '" + std::string(1, chain_op) +
                                            "' and '" + std::string(1, c) +
                                            "' may not be mixed without grouping)");
            chain_op = c;
            ++pos_;
            AstPtr right = term();
            auto node = std::make_shared<Ast>();
            node->kind = Ast::Kind::Binop;
            node->op = c;
            node->children = {left, right};
            left = node;
        }
        return left;
    }

    AstPtr term() {
        AstPtr a = atom();
        skip_ws();
        if (pos_ + 1 < text_.size() &&
            ((text_[pos_] == '>' && text_[pos_ + 1] == '>') ||
             (text_[pos_] == '<' && text_[pos_ + 1] == '<'))) {
            char dir = text_[pos_];
            pos_ += 2;
            u64 k = nat();
            auto node = std::make_shared<Ast>();
            node->kind = Ast::Kind::Shift;
            node->op = dir;
            node->amount = k;
            node->children = {a};
            return node;
        }
        return a;
    }

    AstPtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError(pos_, "an atom");
        char c = text_[pos_];
        auto node = std::make_shared<Ast>();
        if (c == '(') {
            ++pos_;
            AstPtr inner = expr();
            expect(')');
            return inner;
        }
        if (c == '{') {
            ++pos_;
            node->kind = Ast::Kind::Literal;
            node->nats.push_back(nat());
            skip_ws();
            while (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                node->nats.push_back(nat());
                skip_ws();
            }
            expect('}');
            return node;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            throw SyntaxError(pos_, "an atom (bare numbers must be written as {n})");
        std::string id = ident();
        if (id == "N") {
            node->kind = Ast::Kind::Naturals;
            return node;
        }
        if (id == "empty") {
            node->kind = Ast::Kind::Empty;
            return node;
        }
        if (id == "ap") {
            expect('(');
            node->kind = Ast::Kind::Ap;
            node->nats.push_back(nat());
            expect(',');
            node->nats.push_back(nat());
            expect(')');
            return node;
        }
        if (id == "interval") {
            expect('(');
            node->kind = Ast::Kind::Interval;
            node->nats.push_back(nat());
            expect(',');
            node->nats.push_back(nat());
            expect(')');
            return node;
        }
        if (id == "per") {
            expect('(');
            node->kind = Ast::Kind::Per;
            node->transient = bits();
            expect(';');
            node->mask = bits();
            if (node->mask.empty()) throw SyntaxError(pos_, "a nonempty period mask");
            expect(')');
            return node;
        }
        node->kind = Ast::Kind::Named;
        node->name = id;
        return node;
    }

    u64 nat() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw SyntaxError(pos_, "a natural number");
        u64 v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<u64>(text_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    std::string bits() {
        skip_ws();
        std::string s;
        while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) {
            s += text_[pos_];
            ++pos_;
        }
        return s;
    }

    std::string ident() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
            throw SyntaxError(pos_, "an identifier");
        std::string s;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            s += text_[pos_];
            ++pos_;
        }
        return s;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw SyntaxError(pos_, std::string("'") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline AstPtr parse_ast(std::string_view text) { return detail::ExprParser(text).parse(); }

// ---------------------------------------------------------------------------
// Printing

inline std::string print_ast(const AstPtr& a) {
    switch (a->kind) {
        case Ast::Kind::Literal: {
            std::string s = "{";
            for (std::size_t i = 0; i < a->nats.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(a->nats[i]);
            }
            return s + "}";
        }
        case Ast::Kind::Ap:
            return "ap(" + std::to_string(a->nats[0]) + "," + std::to_string(a->nats[1]) + ")";
        case Ast::Kind::Per:
            return "per(" + a->transient + ";" + a->mask + ")";
        case Ast::Kind::Interval:
            return "interval(" + std::to_string(a->nats[0]) + "," + std::to_string(a->nats[1]) + ")";
        case Ast::Kind::Naturals:
            return "N";
        case Ast::Kind::Empty:
            return "empty";
        case Ast::Kind::Named:
            return a->name;
        case Ast::Kind::Shift: {
            const AstPtr& c = a->children[0];
            std::string inner = print_ast(c);
            if (c->kind == Ast::Kind::Binop || c->kind == Ast::Kind::Shift)
                inner = "(" + inner + ")";
            return inner + (a->op == '>' ? ">>" : "<<") + std::to_string(a->amount);
        }
        default: {
            auto wrap = [&](const AstPtr& c) {
                std::string s = print_ast(c);
                if (c->kind == Ast::Kind::Binop && c->op != a->op) return "(" + s + ")";
                return s;
            };
            return wrap(a->children[0]) + std::string(1, a->op) + wrap(a->children[1]);
        }
    }
}

// ---------------------------------------------------------------------------
// Built-in corpus and evaluation

inline NatSet make_pow2() {
    GenRep g;
    g.name = "pow2";
    g.member = [](u64 x) { return x != 0 && (x & (x - 1)) == 0; };
    g.nth = [](u64 i) {
        if (i >= 63) throw std::overflow_error("pow2 enumerator overflow");
        return u64{1} << i;
    };
    return NatSet::generator(std::move(g));
}

// Q = { 2^m + k : k < m }.  The top bit of x determines m; membership is
// the check x - 2^m < m.
inline NatSet make_qset() {
    GenRep g;
    g.name = "qset";
    g.member = [](u64 x) {
        if (x < 2) return false;
        u64 m = 63 - static_cast<u64>(std::countl_zero(x));
        return x - (u64{1} << m) < m;
    };
    g.nth = [](u64 i) {
        // elements sort by (m, k); m contributes m values starting at index m(m-1)/2
        u64 m = 1;
        while (m * (m + 1) / 2 <= i) ++m;
        u64 k = i - m * (m - 1) / 2;
        if (m >= 63) throw std::overflow_error("qset enumerator overflow");
        return (u64{1} << m) + k;
    };
    return NatSet::generator(std::move(g));
}

inline NatSet make_squares() {
    GenRep g;
    g.name = "squares";
    g.member = [](u64 x) {
        u64 r = static_cast<u64>(std::sqrt(static_cast<double>(x)));
        for (u64 c = r > 1 ? r - 1 : 0; c <= r + 1; ++c)
            if (c * c == x) return true;
        return false;
    };
    g.nth = [](u64 i) { return i * i; };
    return NatSet::generator(std::move(g));
}

class Corpus {
public:
    Corpus() {
        names_["pow2"] = make_pow2();
        names_["qset"] = make_qset();
        names_["squares"] = make_squares();
    }

    const NatSet* lookup(const std::string& name) const {
        auto it = names_.find(name);
        return it == names_.end() ? nullptr : &it->second;
    }

    void define(const std::string& name, NatSet s) { names_[name] = std::move(s); }

    // Lines of the form `name = expr`; '#' starts a comment.
    void load(std::string_view text);

private:
    std::map<std::string, NatSet> names_;
};

inline NatSet eval_ast(const AstPtr& a, const Corpus& corpus) {
    switch (a->kind) {
        case Ast::Kind::Literal:
            return NatSet::finite(a->nats);
        case Ast::Kind::Ap:
            return NatSet::arithmetic(a->nats[0], a->nats[1]);
        case Ast::Kind::Per:
            return NatSet::periodic(BitVec::from_string(a->transient),
                                    BitVec::from_string(a->mask));
        case Ast::Kind::Interval:
            return NatSet::interval(a->nats[0], a->nats[1]);
        case Ast::Kind::Naturals:
            return NatSet::naturals();
        case Ast::Kind::Empty:
            return NatSet::empty();
        case Ast::Kind::Named: {
            const NatSet* s = corpus.lookup(a->name);
            if (!s) throw EvalError("unknown set name '" + a->name + "'");
            return *s;
        }
        case Ast::Kind::Shift: {
            NatSet c = eval_ast(a->children[0], corpus);
            return a->op == '>' ? shift_right(c, a->amount) : shift_left(c, a->amount);
        }
        default: {
            NatSet l = eval_ast(a->children[0], corpus);
            NatSet r = eval_ast(a->children[1], corpus);
            switch (a->op) {
                case '|': return set_union(l, r);
                case '&': return set_intersect(l, r);
                default: return set_difference(l, r);
            }
        }
    }
}

inline NatSet parse_expr(std::string_view text, const Corpus& corpus = Corpus()) {
    return eval_ast(parse_ast(text), corpus);
}

inline void Corpus::load(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) continue;
        std::string name(line.substr(0, eq));
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        std::size_t ns = 0;
        while (ns < name.size() && std::isspace(static_cast<unsigned char>(name[ns]))) ++ns;
        name = name.substr(ns);
        if (name.empty()) continue;
        define(name, parse_expr(line.substr(eq + 1), *this));
    }
}

}  // namespace felab
