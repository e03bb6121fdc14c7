#include "torusnls/parse.hpp"

#include <cctype>
#include <vector>

namespace torusnls {

namespace {

enum class Tok { Number, ImagNumber, Imag, Var, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };

struct Token {
    Tok kind;
    std::int64_t value = 0;  // Number/ImagNumber
    int var = 0;             // variable index for Var
    int offset = 0;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        int off = static_cast<int>(i);
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
                v = v * 10 + (src[i++] - '0');
            if (i < src.size() && src[i] == 'i' &&
                !(i + 1 < src.size() && std::isalpha(static_cast<unsigned char>(src[i + 1])))) {
                ++i;
                out.push_back({Tok::ImagNumber, v, 0, off});
            } else {
                out.push_back({Tok::Number, v, 0, off});
            }
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (i < src.size() && std::isalnum(static_cast<unsigned char>(src[i])))
                word += src[i++];
            if (word == "i")
                out.push_back({Tok::Imag, 0, 0, off});
            else if (word == "u")
                out.push_back({Tok::Var, 0, var::alpha, off});
            else if (word == "ux")
                out.push_back({Tok::Var, 0, var::beta, off});
            else if (word == "uc")
                out.push_back({Tok::Var, 0, var::alpha_bar, off});
            else if (word == "uxc")
                out.push_back({Tok::Var, 0, var::beta_bar, off});
            else
                throw ParseError("unknown symbol '" + word + "' (expected u, ux, uc, uxc, or i)",
                                 static_cast<int>(out.size()) + 1, off);
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '^': k = Tok::Caret; break;
            case '/': k = Tok::Slash; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'",
                                 static_cast<int>(out.size()) + 1, off);
        }
        out.push_back({k, 0, 0, off});
        ++i;
    }
    out.push_back({Tok::End, 0, 0, static_cast<int>(src.size())});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ComplexPolynomial4 parse() {
        ComplexPolynomial4 p = expr();
        expect(Tok::End, "end of input");
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& expected) {
        throw ParseError("syntax error at token " + std::to_string(pos_ + 1) + ": expected " +
                             expected,
                         static_cast<int>(pos_ + 1), peek().offset);
    }
    void expect(Tok k, const std::string& what) {
        if (peek().kind != k) fail(what);
        ++pos_;
    }

    ComplexPolynomial4 expr() {
        bool neg = false;
        if (peek().kind == Tok::Plus) take();
        else if (peek().kind == Tok::Minus) { take(); neg = true; }
        ComplexPolynomial4 acc = term();
        if (neg) acc = -acc;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = take().kind == Tok::Minus;
            ComplexPolynomial4 t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    ComplexPolynomial4 term() {
        ComplexPolynomial4 acc = factor();
        while (peek().kind == Tok::Star) {
            take();
            acc = acc * factor();
        }
        return acc;
    }

    ComplexPolynomial4 factor() {
        ComplexPolynomial4 base = primary();
        if (peek().kind == Tok::Caret) {
            take();
            if (peek().kind != Tok::Number) fail("integer exponent");
            std::int64_t e = take().value;
            ComplexPolynomial4 r{GaussianRational(1)};
            for (std::int64_t j = 0; j < e; ++j) r = r * base;
            return r;
        }
        return base;
    }

    ComplexPolynomial4 primary() {
        switch (peek().kind) {
            case Tok::Number: {
                std::int64_t num = take().value;
                std::int64_t den = 1;
                if (peek().kind == Tok::Slash) {
                    take();
                    if (peek().kind != Tok::Number && peek().kind != Tok::ImagNumber)
                        fail("denominator");
                    // "3/2i" lexes the denominator as an imaginary literal
                    bool imag_den = peek().kind == Tok::ImagNumber;
                    den = take().value;
                    if (den == 0) fail("nonzero denominator");
                    if (imag_den)
                        return ComplexPolynomial4{
                            GaussianRational(Rational(0), Rational(num, den))};
                }
                if (peek().kind == Tok::Imag || peek().kind == Tok::ImagNumber) {
                    // forms like "3/2i": numeric part times i
                    bool scaled = peek().kind == Tok::ImagNumber;
                    std::int64_t extra = take().value;
                    Rational im = scaled ? Rational(num * extra, den) : Rational(num, den);
                    return ComplexPolynomial4{GaussianRational(Rational(0), im)};
                }
                return ComplexPolynomial4{GaussianRational(Rational(num, den))};
            }
            case Tok::ImagNumber: {
                std::int64_t v = take().value;
                return ComplexPolynomial4{GaussianRational(Rational(0), Rational(v))};
            }
            case Tok::Imag:
                take();
                return ComplexPolynomial4{GaussianRational::i()};
            case Tok::Var:
                return ComplexPolynomial4::variable(take().var);
            case Tok::LParen: {
                take();
                ComplexPolynomial4 p = expr();
                expect(Tok::RParen, "')'");
                return p;
            }
            default:
                fail("a literal, variable, or '('");
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

}  // namespace

ComplexPolynomial4 parse_nonlinearity(const std::string& src) {
    return Parser(lex(src)).parse();
}

}  // namespace torusnls
