#include "qwalk/parse.hpp"

#include <cctype>

namespace qwalk {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s), pos_(0) {}

    RatFunc parse() {
        RatFunc r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail(Err::BadInput, "trailing input at position " + std::to_string(pos_));
        return r;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFunc expr() {
        RatFunc r;
        if (eat('-')) {
            r = -term();
        } else {
            eat('+');
            r = term();
        }
        for (;;) {
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else break;
        }
        return r;
    }

    RatFunc term() {
        RatFunc r = factor();
        for (;;) {
            if (eat('*')) r *= factor();
            else if (eat('/')) r /= factor();
            else break;
        }
        return r;
    }

    RatFunc factor() {
        if (eat('-')) return -factor();
        RatFunc base = atom();
        if (eat('^')) {
            long e = exponent();
            return base.pow(e);
        }
        return base;
    }

    long exponent() {
        skip_ws();
        bool neg = false;
        bool paren = eat('(');
        if (eat('-')) neg = true;
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail(Err::BadInput, "expected integer exponent at position " + std::to_string(pos_));
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000) fail(Err::BadInput, "exponent too large");
            ++pos_;
        }
        if (paren && !eat(')')) fail(Err::BadInput, "unclosed exponent parenthesis");
        return neg ? -v : v;
    }

    RatFunc atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (!eat(')')) fail(Err::BadInput, "missing ')' at position " + std::to_string(pos_));
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
            return RatFunc(Rat(Int(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) word += s_[pos_++];
            if (word == "t") return RatFunc(Poly::var(Var::t));
            if (word == "x") return RatFunc(Poly::var(Var::x));
            if (word == "y") return RatFunc(Poly::var(Var::y));
            if (word == "u") return RatFunc(Poly::var(Var::u));
            if (word == "lam" || word == "lambda") return RatFunc(Poly::var(Var::lam));
            fail(Err::BadInput, "unknown symbol '" + word + "'");
        }
        fail(Err::BadInput, std::string("unexpected character '") + c + "' at position " + std::to_string(pos_));
    }

    const std::string& s_;
    size_t pos_;
};

}

RatFunc parse_ratfunc(const std::string& text) {
    return Parser(text).parse();
}

}
