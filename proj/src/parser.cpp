#include "folim/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace folim {

namespace {

enum class Tok {
    Name, Var, LParen, RParen, Comma, Dot, Eq, Neq, Not, And, Or,
    Implies, Iff, Exists, Forall, True, False, End
};

struct Token {
    Tok kind;
    std::string text;
    int varIndex = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }

    const Token& peek() const { return cur_; }
    Token next() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            if (s_[pos_] == '\n') { ++line_; col_ = 1; } else ++col_;
            ++pos_;
        }
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= s_.size()) { cur_.kind = Tok::End; cur_.text = "<end>"; return; }
        char c = s_[pos_];
        auto take = [this](size_t k, Tok kind, const char* text) {
            pos_ += k; col_ += static_cast<int>(k);
            cur_.kind = kind; cur_.text = text;
        };
        switch (c) {
        case '(': return take(1, Tok::LParen, "(");
        case ')': return take(1, Tok::RParen, ")");
        case ',': return take(1, Tok::Comma, ",");
        case '.': return take(1, Tok::Dot, ".");
        case '=': return take(1, Tok::Eq, "=");
        case '&': return take(1, Tok::And, "&");
        case '|': return take(1, Tok::Or, "|");
        case '!':
            if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') return take(2, Tok::Neq, "!=");
            return take(1, Tok::Not, "!");
        case '-':
            if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') return take(2, Tok::Implies, "->");
            fail("unexpected '-'");
        case '<':
            if (pos_ + 2 < s_.size() && s_[pos_ + 1] == '-' && s_[pos_ + 2] == '>')
                return take(3, Tok::Iff, "<->");
            fail("unexpected '<'");
        default: break;
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string word = s_.substr(start, pos_ - start);
        col_ += static_cast<int>(word.size());
        cur_.text = word;
        if (word == "exists") { cur_.kind = Tok::Exists; return; }
        if (word == "forall") { cur_.kind = Tok::Forall; return; }
        if (word == "true") { cur_.kind = Tok::True; return; }
        if (word == "false") { cur_.kind = Tok::False; return; }
        if (word.size() > 1 && word[0] == 'x' &&
            std::all_of(word.begin() + 1, word.end(),
                        [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
            cur_.kind = Tok::Var;
            cur_.varIndex = std::stoi(word.substr(1));
            if (cur_.varIndex < 1) fail("variable indices start at x1");
            return;
        }
        cur_.kind = Tok::Name;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "parse error at " << line_ << ":" << col_ << ": " << msg;
        throw ParseError(os.str());
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token cur_;
};

class Parser {
public:
    Parser(const std::string& text, const Signature& sig) : lex_(text), sig_(sig) {}

    Formula parse() {
        Formula f = formula();
        expect(Tok::End, "trailing input after formula");
        return f;
    }

private:
    Formula formula() {
        if (lex_.peek().kind == Tok::Exists || lex_.peek().kind == Tok::Forall) {
            bool ex = lex_.next().kind == Tok::Exists;
            Token v = expect(Tok::Var, "expected variable after quantifier");
            expect(Tok::Dot, "expected '.' after quantified variable");
            Formula body = formula();
            return ex ? Formula::exists(v.varIndex, body) : Formula::forall(v.varIndex, body);
        }
        return iff();
    }

    Formula iff() {
        Formula f = imp();
        while (lex_.peek().kind == Tok::Iff) {
            lex_.next();
            f = f.iff(imp());
        }
        return f;
    }

    Formula imp() {
        Formula f = orExpr();
        while (lex_.peek().kind == Tok::Implies) {
            lex_.next();
            f = f.implies(orExpr());
        }
        return f;
    }

    Formula orExpr() {
        Formula f = andExpr();
        while (lex_.peek().kind == Tok::Or) {
            lex_.next();
            f = f || andExpr();
        }
        return f;
    }

    Formula andExpr() {
        Formula f = unary();
        while (lex_.peek().kind == Tok::And) {
            lex_.next();
            f = f && unary();
        }
        return f;
    }

    Formula unary() {
        const Token& t = lex_.peek();
        switch (t.kind) {
        case Tok::Not:
            lex_.next();
            return !unary();
        case Tok::LParen: {
            lex_.next();
            Formula f = formula();
            expect(Tok::RParen, "expected ')'");
            return f;
        }
        case Tok::True:
            lex_.next();
            return Formula::top();
        case Tok::False:
            lex_.next();
            return Formula::bottom();
        case Tok::Var: {
            Token v = lex_.next();
            const Token& op = lex_.peek();
            if (op.kind == Tok::Eq) {
                lex_.next();
                Token w = expect(Tok::Var, "expected variable after '='");
                return Formula::eq(v.varIndex, w.varIndex);
            }
            if (op.kind == Tok::Neq) {
                lex_.next();
                Token w = expect(Tok::Var, "expected variable after '!='");
                return Formula::neq(v.varIndex, w.varIndex);
            }
            fail(op, "expected '=' or '!=' after variable");
        }
        case Tok::Name: {
            Token name = lex_.next();
            auto relIdx = sig_.indexOf(name.text);
            if (!relIdx) fail(name, "unknown relation '" + name.text + "'");
            expect(Tok::LParen, "expected '(' after relation name");
            std::vector<int> vars;
            vars.push_back(expect(Tok::Var, "expected variable").varIndex);
            while (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                vars.push_back(expect(Tok::Var, "expected variable").varIndex);
            }
            expect(Tok::RParen, "expected ')' after arguments");
            if (sig_.at(*relIdx).arity != static_cast<int>(vars.size()))
                fail(name, "relation '" + name.text + "' has arity " +
                               std::to_string(sig_.at(*relIdx).arity) + ", got " +
                               std::to_string(vars.size()) + " arguments");
            return Formula::atom(name.text, std::move(vars));
        }
        default:
            fail(t, "expected formula");
        }
    }

    Token expect(Tok kind, const std::string& msg) {
        if (lex_.peek().kind != kind) fail(lex_.peek(), msg);
        return lex_.next();
    }

    [[noreturn]] void fail(const Token& at, const std::string& msg) const {
        std::ostringstream os;
        os << "parse error at " << at.line << ":" << at.col << " near '" << at.text
           << "': " << msg;
        throw ParseError(os.str());
    }

    Lexer lex_;
    const Signature& sig_;
};

} // namespace

Formula parseFormula(const std::string& text, const Signature& sig) {
    return Parser(text, sig).parse();
}

} // namespace folim
