#include "cml/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

#include "cml/atoms.hpp"
#include "cml/errors.hpp"

namespace cml {

namespace {

enum class Tok {
    Ident, Number, LParen, RParen, LBracket, RBracket, Comma, Semi, Bar, Tilde,
    Assign, Eq, Neq, Ge, Gt, Le, Lt, EqEq, Imp, Slash, End,
    KwAnd, KwOr, KwGor, KwPr, KwDep, KwIndep,
};

struct Token {
    Tok kind;
    std::string text;
    size_t pos;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { scan(); }

    const Token& peek(size_t ahead = 0) const {
        size_t i = idx_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    Token next() {
        Token t = peek();
        if (idx_ < tokens_.size() - 1) ++idx_;
        return t;
    }

  private:
    void scan() {
        size_t i = 0;
        while (i < text_.size()) {
            char c = text_[i];
            if (isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            size_t start = i;
            if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
                while (i < text_.size() &&
                       (isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_' ||
                        text_[i] == '\''))
                    ++i;
                std::string w = text_.substr(start, i - start);
                Tok k = Tok::Ident;
                if (w == "and") k = Tok::KwAnd;
                else if (w == "or") k = Tok::KwOr;
                else if (w == "gor") k = Tok::KwGor;
                else if (w == "Pr") k = Tok::KwPr;
                else if (w == "dep") k = Tok::KwDep;
                else if (w == "indep") k = Tok::KwIndep;
                tokens_.push_back({k, w, start});
                continue;
            }
            if (isdigit(static_cast<unsigned char>(c))) {
                while (i < text_.size() && isdigit(static_cast<unsigned char>(text_[i]))) ++i;
                if (i + 1 < text_.size() && text_[i] == '.' &&
                    isdigit(static_cast<unsigned char>(text_[i + 1]))) {
                    ++i;
                    while (i < text_.size() && isdigit(static_cast<unsigned char>(text_[i]))) ++i;
                }
                tokens_.push_back({Tok::Number, text_.substr(start, i - start), start});
                continue;
            }
            auto two = [&](const char* s) {
                return i + 1 < text_.size() && text_[i] == s[0] && text_[i + 1] == s[1];
            };
            if (two(":=")) { tokens_.push_back({Tok::Assign, ":=", start}); i += 2; continue; }
            if (two("==")) { tokens_.push_back({Tok::EqEq, "==", start}); i += 2; continue; }
            if (two("=>")) { tokens_.push_back({Tok::Imp, "=>", start}); i += 2; continue; }
            if (two(">=")) { tokens_.push_back({Tok::Ge, ">=", start}); i += 2; continue; }
            if (two("<=")) { tokens_.push_back({Tok::Le, "<=", start}); i += 2; continue; }
            if (two("!=")) { tokens_.push_back({Tok::Neq, "!=", start}); i += 2; continue; }
            switch (c) {
                case '(': tokens_.push_back({Tok::LParen, "(", start}); break;
                case ')': tokens_.push_back({Tok::RParen, ")", start}); break;
                case '[': tokens_.push_back({Tok::LBracket, "[", start}); break;
                case ']': tokens_.push_back({Tok::RBracket, "]", start}); break;
                case ',': tokens_.push_back({Tok::Comma, ",", start}); break;
                case ';': tokens_.push_back({Tok::Semi, ";", start}); break;
                case '|': tokens_.push_back({Tok::Bar, "|", start}); break;
                case '~': tokens_.push_back({Tok::Tilde, "~", start}); break;
                case '=': tokens_.push_back({Tok::Eq, "=", start}); break;
                case '>': tokens_.push_back({Tok::Gt, ">", start}); break;
                case '<': tokens_.push_back({Tok::Lt, "<", start}); break;
                case '/': tokens_.push_back({Tok::Slash, "/", start}); break;
                default: {
                    std::ostringstream os;
                    os << "unexpected character '" << c << "' at position " << start;
                    throw InputError(os.str());
                }
            }
            ++i;
        }
        tokens_.push_back({Tok::End, "", text_.size()});
    }

    const std::string& text_;
    std::vector<Token> tokens_;
    size_t idx_ = 0;
};

class Parser {
  public:
    Parser(const std::string& text, const Signature& sig) : lex_(text), sig_(sig) {}

    FPtr run() {
        FPtr f = formula();
        expect(Tok::End, "end of input");
        check_wellformed(f, sig_);
        return f;
    }

  private:
    [[noreturn]] void fail(const std::string& what, const Token& t) {
        std::ostringstream os;
        os << what << " at position " << t.pos;
        if (!t.text.empty()) os << " (near '" << t.text << "')";
        throw InputError(os.str());
    }

    Token expect(Tok k, const char* what) {
        Token t = lex_.next();
        if (t.kind != k) fail(std::string("expected ") + what, t);
        return t;
    }

    int variable(const Token& t) {
        int v = sig_.var_index(t.text);
        if (v < 0) fail("unknown variable '" + t.text + "'", t);
        return v;
    }

    int value_for(int var, const Token& t) {
        Value v;
        if (t.kind == Tok::Number) {
            if (t.text.find('.') != std::string::npos) fail("range values are not decimals", t);
            try {
                v = Value(static_cast<long long>(std::stoll(t.text)));
            } catch (const std::exception&) {
                fail("value out of range", t);
            }
        } else if (t.kind == Tok::Ident) {
            v = Value(t.text);
        } else {
            fail("expected a value", t);
        }
        int idx = sig_.value_index(var, v);
        if (idx < 0)
            fail("value '" + t.text + "' not in the range of " + sig_.var_name(var), t);
        return idx;
    }

    Rational number() {
        Token t = expect(Tok::Number, "a number");
        std::string text = t.text;
        if (text.find('.') == std::string::npos && lex_.peek().kind == Tok::Slash) {
            lex_.next();
            Token q = expect(Tok::Number, "a denominator");
            if (q.text.find('.') != std::string::npos) fail("bad fraction", q);
            text += "/" + q.text;
        }
        try {
            return Rational::parse(text);
        } catch (const std::exception&) {
            fail("unreadable number", t);
        }
    }

    std::optional<Cmp> peek_cmp() {
        switch (lex_.peek().kind) {
            case Tok::Ge: return Cmp::Ge;
            case Tok::Gt: return Cmp::Gt;
            case Tok::Le: return Cmp::Le;
            case Tok::Lt: return Cmp::Lt;
            case Tok::EqEq: return Cmp::Eq;
            case Tok::Neq: return Cmp::Ne;
            default: return std::nullopt;
        }
    }

    FPtr formula() { // => lowest, right-associative
        FPtr l = or_level();
        if (lex_.peek().kind == Tok::Imp) {
            lex_.next();
            return f_imp(l, formula());
        }
        return l;
    }

    FPtr or_level() {
        FPtr l = and_level();
        while (lex_.peek().kind == Tok::KwOr || lex_.peek().kind == Tok::KwGor) {
            bool gor = lex_.next().kind == Tok::KwGor;
            FPtr r = and_level();
            l = gor ? f_gor(l, r) : f_or(l, r);
        }
        return l;
    }

    FPtr and_level() {
        FPtr l = unary();
        while (lex_.peek().kind == Tok::KwAnd) {
            lex_.next();
            l = f_and(l, unary());
        }
        return l;
    }

    FPtr unary() {
        if (lex_.peek().kind == Tok::LBracket) {
            lex_.next();
            std::vector<Intervention> ivs;
            for (;;) {
                Token name = expect(Tok::Ident, "a variable");
                int var = variable(name);
                expect(Tok::Assign, "':='");
                Token val = lex_.next();
                ivs.push_back({var, value_for(var, val)});
                Token sep = lex_.next();
                if (sep.kind == Tok::RBracket) break;
                if (sep.kind != Tok::Comma) fail("expected ',' or ']'", sep);
            }
            return f_cf(std::move(ivs), unary());
        }
        return primary();
    }

    FPtr primary() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::LParen: {
                lex_.next();
                FPtr f = formula();
                expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::KwPr: return pr_atom();
            case Tok::KwDep: return dep_atom();
            case Tok::KwIndep: return indep_atom();
            case Tok::Ident: return ident_atom();
            default: fail("expected a formula", t);
        }
    }

    // Pr(co [| co]) cmp (number | Pr(co [| co]))
    FPtr pr_atom() {
        lex_.next();
        expect(Tok::LParen, "'('");
        FPtr arg = formula();
        FPtr cond;
        if (lex_.peek().kind == Tok::Bar) {
            lex_.next();
            cond = formula();
        }
        expect(Tok::RParen, "')'");
        auto cmp = peek_cmp();
        if (!cmp) fail("expected a comparison after Pr(..)", lex_.peek());
        lex_.next();
        if (lex_.peek().kind == Tok::KwPr) {
            lex_.next();
            expect(Tok::LParen, "'('");
            FPtr rhs = formula();
            FPtr cond2;
            if (lex_.peek().kind == Tok::Bar) {
                lex_.next();
                cond2 = formula();
            }
            expect(Tok::RParen, "')'");
            if (cond || cond2) return f_condcmp(arg, cond, *cmp, rhs, cond2);
            return f_prcmp(arg, *cmp, rhs);
        }
        Rational eps = number();
        if (cond) return f_cond(arg, cond, *cmp, eps);
        return f_pr(arg, *cmp, eps);
    }

    std::vector<int> varlist() {
        std::vector<int> vs;
        for (;;) {
            Token t = expect(Tok::Ident, "a variable");
            vs.push_back(variable(t));
            if (lex_.peek().kind != Tok::Comma) break;
            lex_.next();
        }
        return vs;
    }

    FPtr dep_atom() {
        lex_.next();
        expect(Tok::LParen, "'('");
        auto xs = varlist();
        expect(Tok::Semi, "';'");
        auto ys = varlist();
        expect(Tok::RParen, "')'");
        return expand_atom(AtomKind::Dep, xs, ys, {}, sig_);
    }

    FPtr indep_atom() {
        lex_.next();
        expect(Tok::LParen, "'('");
        auto xs = varlist();
        expect(Tok::Semi, "';'");
        auto ys = varlist();
        std::vector<int> zs;
        bool cond = false;
        if (lex_.peek().kind == Tok::Bar) {
            lex_.next();
            zs = varlist();
            cond = true;
        }
        expect(Tok::RParen, "')'");
        return expand_atom(cond ? AtomKind::Cindep : AtomKind::Indep, xs, ys, zs, sig_);
    }

    // literal `X=1` / `X!=1`, or marginal identity `X[,Y..] ~ Z[,W..]`
    FPtr ident_atom() {
        Tok after = lex_.peek(1).kind;
        if (after == Tok::Comma || after == Tok::Tilde) {
            auto xs = varlist();
            expect(Tok::Tilde, "'~'");
            auto ys = varlist();
            return expand_atom(AtomKind::Mi, xs, ys, {}, sig_);
        }
        Token name = lex_.next();
        int var = variable(name);
        Token op = lex_.next();
        if (op.kind != Tok::Eq && op.kind != Tok::Neq) fail("expected '=' or '!='", op);
        Token val = lex_.next();
        return f_lit(var, value_for(var, val), op.kind == Tok::Neq);
    }

    Lexer lex_;
    const Signature& sig_;
};

} // namespace

FPtr parse(const std::string& text, const Signature& sig) {
    return Parser(text, sig).run();
}

} // namespace cml
