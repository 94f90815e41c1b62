#pragma once

// Recursive-descent parser for the formula language.
//
//   formula := iff
//   iff     := impl ("<->" impl)*          right associative
//   impl    := disj ("->" disj)*           right associative
//   disj    := conj ("|" conj)*            left associative
//   conj    := unary ("&" unary)*          left associative
//   unary   := "~" unary | "[" clauses? "]" unary | "<" clauses? ">" unary
//            | "(" formula ")" | atom
//   atom    := IDENT "=" IDENT | IDENT "!=" IDENT | "T" | "F"
//   clauses := IDENT "=" IDENT ("," IDENT "=" IDENT)*
//
// "~" is strong (team-level) negation. T and F are reserved words unless
// directly followed by "=" or "!=".

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "rct/formula.hpp"

namespace rct {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

class SyntaxError : public ParseError {
public:
    using ParseError::ParseError;
};

class UnknownVariable : public ParseError {
public:
    using ParseError::ParseError;
};

class UnknownValue : public ParseError {
public:
    using ParseError::ParseError;
};

class InconsistentAntecedent : public ParseError {
public:
    using ParseError::ParseError;
};

class NestedModalError : public ParseError {
public:
    using ParseError::ParseError;
};

namespace detail {

enum class Tok { Ident, Neg, And, Or, Impl, Iff, Eq, Neq, LBrack, RBrack, LAngle, RAngle,
                 LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t pos = i;
        if (ident_char(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), pos});
            i = j;
            continue;
        }
        auto two = text.substr(i, 2);
        auto three = text.substr(i, 3);
        if (three == "<->") {
            out.push_back({Tok::Iff, "<->", pos});
            i += 3;
        } else if (two == "->") {
            out.push_back({Tok::Impl, "->", pos});
            i += 2;
        } else if (two == "!=") {
            out.push_back({Tok::Neq, "!=", pos});
            i += 2;
        } else {
            Tok k;
            switch (c) {
                case '~': k = Tok::Neg; break;
                case '&': k = Tok::And; break;
                case '|': k = Tok::Or; break;
                case '=': k = Tok::Eq; break;
                case '[': k = Tok::LBrack; break;
                case ']': k = Tok::RBrack; break;
                case '<': k = Tok::LAngle; break;
                case '>': k = Tok::RAngle; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                case ',': k = Tok::Comma; break;
                default:
                    throw SyntaxError(std::string("unexpected character '") + c + "'", pos);
            }
            out.push_back({k, std::string(1, c), pos});
            ++i;
        }
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

class FormulaParser {
public:
    FormulaParser(std::string_view text, const Signature& sig)
        : toks_(tokenize(text)), sig_(sig) {}

    Formula parse() {
        Formula f = parse_iff();
        expect(Tok::End, "trailing input after formula");
        return f;
    }

    InterventionSpec parse_clause_list() {
        InterventionSpec spec = parse_clauses();
        expect(Tok::End, "trailing input after clause list");
        return spec;
    }

private:
    const Token& peek() const { return toks_[i_]; }
    Token next() { return toks_[i_++]; }
    bool accept(Tok k) {
        if (peek().kind == k) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(Tok k, const std::string& msg) {
        if (!accept(k)) throw SyntaxError(msg, peek().pos);
    }

    Formula parse_iff() {
        std::vector<Formula> parts{parse_impl()};
        while (accept(Tok::Iff)) parts.push_back(parse_impl());
        Formula acc = parts.back();
        for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
            acc = Formula::iff(*it, acc);
        return acc;
    }

    Formula parse_impl() {
        std::vector<Formula> parts{parse_disj()};
        while (accept(Tok::Impl)) parts.push_back(parse_disj());
        Formula acc = parts.back();
        for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
            acc = Formula::impl(*it, acc);
        return acc;
    }

    Formula parse_disj() {
        Formula acc = parse_conj();
        while (accept(Tok::Or)) acc = Formula::disj(acc, parse_conj());
        return acc;
    }

    Formula parse_conj() {
        Formula acc = parse_unary();
        while (accept(Tok::And)) acc = Formula::conj(acc, parse_unary());
        return acc;
    }

    Formula parse_unary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Neg:
                next();
                return Formula::neg(parse_unary());
            case Tok::LBrack: {
                std::size_t pos = next().pos;
                InterventionSpec spec =
                    peek().kind == Tok::RBrack ? InterventionSpec() : parse_clauses();
                expect(Tok::RBrack, "expected ']' after intervention clauses");
                return make_modal(false, std::move(spec), parse_unary(), pos);
            }
            case Tok::LAngle: {
                std::size_t pos = next().pos;
                InterventionSpec spec =
                    peek().kind == Tok::RAngle ? InterventionSpec() : parse_clauses();
                expect(Tok::RAngle, "expected '>' after intervention clauses");
                return make_modal(true, std::move(spec), parse_unary(), pos);
            }
            case Tok::LParen: {
                next();
                Formula f = parse_iff();
                expect(Tok::RParen, "expected ')'");
                return f;
            }
            case Tok::Ident:
                return parse_atom();
            default:
                throw SyntaxError("expected a formula", t.pos);
        }
    }

    Formula make_modal(bool diamond, InterventionSpec spec, Formula operand, std::size_t pos) {
        if (operand.has_modal())
            throw NestedModalError("modal operand must not contain a modal operator", pos);
        return diamond ? Formula::diamond(std::move(spec), std::move(operand))
                       : Formula::box(std::move(spec), std::move(operand));
    }

    Formula parse_atom() {
        Token name = next();
        if ((name.text == "T" || name.text == "F") && peek().kind != Tok::Eq &&
            peek().kind != Tok::Neq)
            return name.text == "T" ? Formula::top() : Formula::bottom();
        bool neq;
        if (accept(Tok::Eq))
            neq = false;
        else if (accept(Tok::Neq))
            neq = true;
        else
            throw SyntaxError("expected '=' or '!=' after '" + name.text + "'", peek().pos);
        auto [v, x] = resolve(name, peek());
        next();
        return neq ? Formula::neq(v, x) : Formula::atom(v, x);
    }

    InterventionSpec parse_clauses() {
        InterventionSpec spec;
        while (true) {
            Token name = peek();
            if (name.kind != Tok::Ident) throw SyntaxError("expected a variable name", name.pos);
            next();
            expect(Tok::Eq, "expected '=' in intervention clause");
            Token valtok = peek();
            auto [v, x] = resolve(name, valtok);
            next();
            try {
                spec.add(v, x);
            } catch (const InconsistentIntervention&) {
                throw InconsistentAntecedent(
                    "conflicting values for '" + name.text + "' in one antecedent", name.pos);
            }
            if (!accept(Tok::Comma)) break;
        }
        return spec;
    }

    std::pair<VarId, Value> resolve(const Token& name, const Token& valtok) {
        if (valtok.kind != Tok::Ident) throw SyntaxError("expected a value name", valtok.pos);
        auto v = sig_.var_index(name.text);
        if (!v) throw UnknownVariable("unknown variable '" + name.text + "'", name.pos);
        auto x = sig_.value_index(*v, valtok.text);
        if (!x)
            throw UnknownValue("unknown value '" + valtok.text + "' for variable '" + name.text +
                                   "'",
                               valtok.pos);
        return {*v, *x};
    }

    std::vector<Token> toks_;
    const Signature& sig_;
    std::size_t i_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, const Signature& sig) {
    return detail::FormulaParser(text, sig).parse();
}

// Parses a bare clause list "X=x,Y=y" (the CLI's intervention argument).
inline InterventionSpec parse_intervention(std::string_view text, const Signature& sig) {
    return detail::FormulaParser(text, sig).parse_clause_list();
}

}  // namespace rct
