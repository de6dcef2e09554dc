#include "tww/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace tww {

namespace {

struct Token {
    enum class Kind { Ident, LParen, RParen, Comma, Eq, And, Or, Not, End };
    Kind kind;
    std::string text;
    size_t pos;
};

[[noreturn]] void syntax_error(const std::string& what, size_t pos) {
    throw std::invalid_argument("formula: " + what + " at position " + std::to_string(pos + 1));
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            out.push_back({Token::Kind::Ident, text.substr(start, i - start), start});
            continue;
        }
        Token::Kind kind;
        switch (c) {
            case '(': kind = Token::Kind::LParen; break;
            case ')': kind = Token::Kind::RParen; break;
            case ',': kind = Token::Kind::Comma; break;
            case '=': kind = Token::Kind::Eq; break;
            case '&': kind = Token::Kind::And; break;
            case '|': kind = Token::Kind::Or; break;
            case '!': kind = Token::Kind::Not; break;
            default: syntax_error(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({kind, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::Kind::End, "", text.size()});
    return out;
}

// intermediate AST; quantifiers may sit anywhere before prenex extraction
struct Sentence {
    enum class Kind { And, Or, Not, Quant, Atom };
    Kind kind;
    bool exists = false;                   // Quant
    std::string var;                       // Quant
    BodyNode::Kind atom = BodyNode::Kind::Eq;  // Atom
    std::string name;                      // Atom relation/unary name
    std::string va, vb;                    // Atom operands
    size_t pos = 0;
    std::vector<Sentence> kids;
};

class Parser {
  public:
    Parser(const std::string& text, bool nested_quantifiers)
        : tokens_(tokenize(text)), nested_(nested_quantifiers) {}

    Sentence parse() {
        Sentence s = nested_ ? parse_or() : parse_prenex();
        if (peek().kind != Token::Kind::End) syntax_error("trailing input", peek().pos);
        return s;
    }

  private:
    const Token& peek(size_t ahead = 0) const {
        return tokens_[std::min(at_ + ahead, tokens_.size() - 1)];
    }
    const Token& take() { return tokens_[std::min(at_++, tokens_.size() - 1)]; }

    bool at_quantifier() const {
        return peek().kind == Token::Kind::Ident && (peek().text == "E" || peek().text == "A") &&
               peek(1).kind == Token::Kind::Ident;
    }

    Sentence parse_prenex() {
        std::vector<std::pair<bool, Token>> prefix;
        while (at_quantifier()) {
            bool exists = take().text == "E";
            prefix.emplace_back(exists, take());
        }
        Sentence body = parse_or();
        for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
            Sentence quant{Sentence::Kind::Quant};
            quant.exists = it->first;
            quant.var = it->second.text;
            quant.pos = it->second.pos;
            quant.kids.push_back(std::move(body));
            body = std::move(quant);
        }
        return body;
    }

    Sentence parse_or() {
        Sentence left = parse_and();
        while (peek().kind == Token::Kind::Or) {
            take();
            Sentence node{Sentence::Kind::Or};
            node.kids.push_back(std::move(left));
            node.kids.push_back(parse_and());
            left = std::move(node);
        }
        return left;
    }

    Sentence parse_and() {
        Sentence left = parse_unary();
        while (peek().kind == Token::Kind::And) {
            take();
            Sentence node{Sentence::Kind::And};
            node.kids.push_back(std::move(left));
            node.kids.push_back(parse_unary());
            left = std::move(node);
        }
        return left;
    }

    Sentence parse_unary() {
        if (peek().kind == Token::Kind::Not) {
            take();
            Sentence node{Sentence::Kind::Not};
            node.kids.push_back(parse_unary());
            return node;
        }
        if (nested_ && at_quantifier()) {
            Sentence node{Sentence::Kind::Quant};
            node.pos = peek().pos;
            node.exists = take().text == "E";
            node.var = take().text;
            node.kids.push_back(parse_or());  // scope: to the end of the group
            return node;
        }
        if (peek().kind == Token::Kind::LParen) {
            take();
            Sentence inner = parse_or();
            if (peek().kind != Token::Kind::RParen) syntax_error("expected ')'", peek().pos);
            take();
            return inner;
        }
        return parse_atom();
    }

    Sentence parse_atom() {
        if (peek().kind != Token::Kind::Ident) syntax_error("expected an atom", peek().pos);
        Token head = take();
        Sentence node{Sentence::Kind::Atom};
        node.pos = head.pos;
        if (peek().kind == Token::Kind::LParen) {
            take();
            if (peek().kind != Token::Kind::Ident) syntax_error("expected a variable", peek().pos);
            node.va = take().text;
            if (peek().kind == Token::Kind::Comma) {
                take();
                if (peek().kind != Token::Kind::Ident)
                    syntax_error("expected a variable", peek().pos);
                node.vb = take().text;
                node.atom = BodyNode::Kind::Rel;
                if (head.text == "E") {
                    node.name = "E";
                } else if (head.text.size() > 1 && head.text[0] == 'R') {
                    node.name = head.text.substr(1);
                } else {
                    syntax_error("binary atom must be E(...) or Rname(...)", head.pos);
                }
            } else {
                if (head.text.size() <= 1 || head.text[0] != 'U')
                    syntax_error("unary atom must be Uname(...)", head.pos);
                node.atom = BodyNode::Kind::Unary;
                node.name = head.text.substr(1);
            }
            if (peek().kind != Token::Kind::RParen) syntax_error("expected ')'", peek().pos);
            take();
            return node;
        }
        if (peek().kind == Token::Kind::Eq) {
            take();
            if (peek().kind != Token::Kind::Ident) syntax_error("expected a variable", peek().pos);
            node.va = head.text;
            node.vb = take().text;
            node.atom = BodyNode::Kind::Eq;
            return node;
        }
        syntax_error("expected '=' or '(' after identifier", peek().pos);
    }

    std::vector<Token> tokens_;
    size_t at_ = 0;
    bool nested_;
};

void collect_quantified(const Sentence& s, std::vector<std::string>& names) {
    if (s.kind == Sentence::Kind::Quant) {
        if (std::find(names.begin(), names.end(), s.var) != names.end())
            throw std::invalid_argument("formula: variable '" + s.var + "' quantified twice");
        names.push_back(s.var);
    }
    for (auto& kid : s.kids) collect_quantified(kid, names);
}

struct Extraction {
    PrenexFormula f;
    std::vector<std::string> quantified;     // all quantifier names, for capture checks
    std::map<std::string, int> scope;        // currently visible bound variables
    std::map<std::string, int> free_slots;
    std::map<int, std::string> bound_names;  // slot -> name, in extraction order

    int slot_of(const std::string& var, size_t pos) {
        if (auto it = scope.find(var); it != scope.end()) return it->second;
        if (std::find(quantified.begin(), quantified.end(), var) != quantified.end())
            syntax_error("variable '" + var + "' used outside its quantifier's scope", pos);
        auto [it, fresh] = free_slots.try_emplace(
            var, static_cast<int>(quantified.size() + free_slots.size()));
        (void)fresh;
        return it->second;
    }

    // hoists quantifiers in visit order while pushing negation onto atoms
    BodyNode walk(const Sentence& s, bool positive) {
        switch (s.kind) {
            case Sentence::Kind::Quant: {
                int slot = static_cast<int>(f.exists.size());
                f.exists.push_back((positive ? s.exists : !s.exists) ? 1 : 0);
                bound_names[slot] = s.var;
                scope.emplace(s.var, slot);
                BodyNode body = walk(s.kids[0], positive);
                scope.erase(s.var);
                return body;
            }
            case Sentence::Kind::Not:
                return walk(s.kids[0], !positive);
            case Sentence::Kind::And:
            case Sentence::Kind::Or: {
                BodyNode node;
                bool is_and = (s.kind == Sentence::Kind::And) == positive;
                node.kind = is_and ? BodyNode::Kind::And : BodyNode::Kind::Or;
                for (auto& kid : s.kids) node.kids.push_back(walk(kid, positive));
                return node;
            }
            case Sentence::Kind::Atom: {
                BodyNode atom;
                atom.kind = s.atom;
                atom.name = s.name;
                atom.a = slot_of(s.va, s.pos);
                if (s.atom != BodyNode::Kind::Unary) atom.b = slot_of(s.vb, s.pos);
                if (positive) return atom;
                BodyNode neg;
                neg.kind = BodyNode::Kind::Not;
                neg.kids.push_back(std::move(atom));
                return neg;
            }
        }
        throw std::logic_error("unreachable");
    }
};

PrenexFormula build(const Sentence& root) {
    Extraction ex;
    collect_quantified(root, ex.quantified);
    ex.f.body = ex.walk(root, true);

    ex.f.names.assign(ex.quantified.size() + ex.free_slots.size(), "");
    for (auto& [slot, var] : ex.bound_names) ex.f.names[slot] = var;
    for (auto& [var, slot] : ex.free_slots) ex.f.names[slot] = var;
    return ex.f;
}

}  // namespace

PrenexFormula parse_formula(const std::string& text) {
    Parser parser(text, false);
    Sentence root = parser.parse();
    return build(root);
}

PrenexFormula to_prenex(const std::string& text) {
    Parser parser(text, true);
    Sentence root = parser.parse();
    return build(root);
}

namespace {

void print_body(const BodyNode& b, const std::vector<std::string>& names, std::string& out) {
    switch (b.kind) {
        case BodyNode::Kind::And:
        case BodyNode::Kind::Or:
            out += '(';
            print_body(b.kids[0], names, out);
            out += b.kind == BodyNode::Kind::And ? " & " : " | ";
            print_body(b.kids[1], names, out);
            out += ')';
            return;
        case BodyNode::Kind::Not:
            out += '!';
            print_body(b.kids[0], names, out);
            return;
        case BodyNode::Kind::Eq:
            out += names[b.a] + "=" + names[b.b];
            return;
        case BodyNode::Kind::Rel:
            out += (b.name == "E" ? "E" : "R" + b.name) + "(" + names[b.a] + "," + names[b.b] + ")";
            return;
        case BodyNode::Kind::Unary:
            out += "U" + b.name + "(" + names[b.a] + ")";
            return;
    }
}

}  // namespace

std::string to_string(const PrenexFormula& f) {
    std::string out;
    for (int i = 0; i < f.depth(); ++i)
        out += std::string(f.exists[i] ? "E " : "A ") + f.names[i] + " ";
    print_body(f.body, f.names, out);
    return out;
}

namespace {

bool eval_body(const BodyNode& b, const BinaryStructure& s, const std::vector<Vertex>& assign) {
    switch (b.kind) {
        case BodyNode::Kind::And:
            return eval_body(b.kids[0], s, assign) && eval_body(b.kids[1], s, assign);
        case BodyNode::Kind::Or:
            return eval_body(b.kids[0], s, assign) || eval_body(b.kids[1], s, assign);
        case BodyNode::Kind::Not:
            return !eval_body(b.kids[0], s, assign);
        case BodyNode::Kind::Eq:
            return assign[b.a] == assign[b.b];
        case BodyNode::Kind::Rel: {
            int rel = s.relation_index(b.name);
            if (rel < 0)
                throw std::invalid_argument("formula references unknown relation " + b.name);
            return s.has_pair(rel, assign[b.a], assign[b.b]);
        }
        case BodyNode::Kind::Unary: {
            int idx = s.unary_index(b.name);
            if (idx < 0)
                throw std::invalid_argument("formula references unknown unary relation " + b.name);
            return s.unary[idx].second.count(assign[b.a]) > 0;
        }
    }
    return false;
}

}  // namespace

bool brute_force_check(const BinaryStructure& s, const PrenexFormula& f, const Caps& caps,
                       const std::vector<Vertex>& frees) {
    s.validate();
    if (static_cast<int>(frees.size()) != f.free_count())
        throw std::invalid_argument("free-variable assignment has the wrong arity");

    double total = std::pow(static_cast<double>(std::max(s.n, 1)), f.depth());
    if (total > static_cast<double>(caps.brute_assignments))
        throw CapError("brute-force assignment space exceeds the cap");

    std::vector<Vertex> assign(f.names.size(), 0);
    for (size_t i = 0; i < frees.size(); ++i) {
        if (frees[i] < 1 || frees[i] > s.n)
            throw std::invalid_argument("free-variable assignment leaves the domain");
        assign[f.depth() + i] = frees[i];
    }

    auto recurse = [&](auto&& self, int q) -> bool {
        if (q == f.depth()) return eval_body(f.body, s, assign);
        for (Vertex v = 1; v <= s.n; ++v) {
            assign[q] = v;
            bool sub = self(self, q + 1);
            if (f.exists[q] && sub) return true;
            if (!f.exists[q] && !sub) return false;
        }
        return !f.exists[q];
    };
    return recurse(recurse, 0);
}

}  // namespace tww
