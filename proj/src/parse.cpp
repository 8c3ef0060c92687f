#include "dynheight/parse.hpp"

#include <cctype>
#include <vector>

namespace dynheight {

namespace {

struct Token {
    enum Kind { Number, Ident, Symbol, End } kind;
    std::string text;
    size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }
    bool at_symbol(char c) const { return cur_.kind == Token::Symbol && cur_.text[0] == c; }
    void expect_symbol(char c) {
        if (!at_symbol(c))
            throw ParseError(std::string("expected '") + c + "'", cur_.pos);
        advance();
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        size_t start = i_;
        if (i_ >= s_.size()) {
            cur_ = {Token::End, "", start};
            return;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            cur_ = {Token::Number, s_.substr(start, i_ - start), start};
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
            cur_ = {Token::Ident, s_.substr(start, i_ - start), start};
        } else if (std::string("+-*/^(),").find(c) != std::string::npos) {
            ++i_;
            cur_ = {Token::Symbol, std::string(1, c), start};
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    const std::string& s_;
    size_t i_ = 0;
    Token cur_{Token::End, "", 0};
};

// ----- polynomial expressions (coefficients ascending) -----------------------

using Poly = std::vector<mpq_class>;

void trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b, bool sub) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += sub ? mpq_class(-b[i]) : b[i];
    trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

class PolyParser {
public:
    explicit PolyParser(const std::string& s) : lex_(s) {}

    Poly parse() {
        Poly p = expr();
        if (lex_.peek().kind != Token::End)
            throw ParseError("trailing input", lex_.peek().pos);
        return p;
    }

private:
    Poly expr() {
        Poly p = term();
        while (lex_.at_symbol('+') || lex_.at_symbol('-')) {
            bool sub = lex_.take().text == "-";
            p = poly_add(p, term(), sub);
        }
        return p;
    }

    Poly term() {
        Poly p = factor();
        while (lex_.at_symbol('*') || lex_.at_symbol('/')) {
            Token op = lex_.take();
            Poly q = factor();
            if (op.text == "*") {
                p = poly_mul(p, q);
            } else {
                if (q.size() != 1 || q[0] == 0)
                    throw ParseError("division only by a nonzero constant", op.pos);
                for (auto& c : p) c /= q[0];
            }
        }
        return p;
    }

    Poly factor() {
        if (lex_.at_symbol('-')) {
            lex_.take();
            Poly p = factor();
            for (auto& c : p) c = -c;
            return p;
        }
        if (lex_.at_symbol('+')) {
            lex_.take();
            return factor();
        }
        Poly base = atom();
        if (lex_.at_symbol('^')) {
            Token caret = lex_.take();
            Token e = lex_.take();
            if (e.kind != Token::Number)
                throw ParseError("exponent must be a nonnegative integer", caret.pos);
            unsigned long k = std::stoul(e.text);
            Poly r{1};
            for (unsigned long i = 0; i < k; ++i) r = poly_mul(r, base);
            return r;
        }
        return base;
    }

    Poly atom() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Number) {
            Token n = lex_.take();
            return Poly{mpq_class(n.text)};
        }
        if (t.kind == Token::Ident) {
            Token id = lex_.take();
            if (id.text == "z") return Poly{0, 1};
            throw ParseError("unknown identifier '" + id.text + "'", id.pos);
        }
        if (lex_.at_symbol('(')) {
            lex_.take();
            Poly p = expr();
            lex_.expect_symbol(')');
            return p;
        }
        throw ParseError("expected a number, 'z', or '('", t.pos);
    }

    Lexer lex_;
};

// ----- point expressions ------------------------------------------------------

class PointParser {
public:
    explicit PointParser(const std::string& s) : lex_(s) {}

    QuadExt parse() {
        QuadExt v = expr();
        if (lex_.peek().kind != Token::End)
            throw ParseError("trailing input", lex_.peek().pos);
        return v;
    }

private:
    QuadExt expr() {
        QuadExt v = term();
        while (lex_.at_symbol('+') || lex_.at_symbol('-')) {
            bool sub = lex_.take().text == "-";
            QuadExt w = term();
            v = sub ? v - w : v + w;
        }
        return v;
    }

    QuadExt term() {
        QuadExt v = factor();
        while (lex_.at_symbol('*') || lex_.at_symbol('/')) {
            Token op = lex_.take();
            QuadExt w = factor();
            if (op.text == "*") {
                v = v * w;
            } else {
                if (w.is_zero()) throw ParseError("division by zero", op.pos);
                v = v / w;
            }
        }
        return v;
    }

    QuadExt factor() {
        if (lex_.at_symbol('-')) {
            lex_.take();
            return -factor();
        }
        if (lex_.at_symbol('+')) {
            lex_.take();
            return factor();
        }
        QuadExt base = atom();
        if (lex_.at_symbol('^')) {
            Token caret = lex_.take();
            Token e = lex_.take();
            if (e.kind != Token::Number)
                throw ParseError("exponent must be a nonnegative integer", caret.pos);
            unsigned long k = std::stoul(e.text);
            QuadExt r(mpq_class(1));
            for (unsigned long i = 0; i < k; ++i) r = r * base;
            return r;
        }
        return base;
    }

    QuadExt atom() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Number) {
            Token n = lex_.take();
            return QuadExt(mpq_class(n.text));
        }
        if (t.kind == Token::Ident) {
            Token id = lex_.take();
            if (id.text != "sqrt")
                throw ParseError("unknown identifier '" + id.text + "'", id.pos);
            lex_.expect_symbol('(');
            QuadExt inner = expr();
            lex_.expect_symbol(')');
            if (!inner.is_rational())
                throw ParseError("nested sqrt is not supported", id.pos);
            mpq_class r = inner.x();
            if (auto root = rational_kth_root(r < 0 ? mpq_class(-r) : r, 2)) {
                QuadExt v(r < 0 ? QuadExt(0, *root, -1) : QuadExt(*root));
                return v;
            }
            return QuadExt::sqrt_of(r);
        }
        if (lex_.at_symbol('(')) {
            lex_.take();
            QuadExt v = expr();
            lex_.expect_symbol(')');
            return v;
        }
        throw ParseError("expected a number, 'sqrt', or '('", t.pos);
    }

    Lexer lex_;
};

} // namespace

mpq_class parse_rational(const std::string& text) {
    QuadExt v = PointParser(text).parse();
    if (!v.is_rational()) throw ParseError("expected a rational value", 0);
    return v.x();
}

PolySpec parse_polynomial(const std::string& text) {
    if (text.find(',') != std::string::npos) {
        // descending coefficient list a_d, ..., a_0
        std::vector<mpq_class> desc;
        size_t start = 0;
        while (true) {
            size_t comma = text.find(',', start);
            std::string piece =
                text.substr(start, comma == std::string::npos ? comma : comma - start);
            try {
                desc.push_back(parse_rational(piece));
            } catch (ParseError& e) {
                throw ParseError(e.what(), start + e.position);
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        std::vector<mpq_class> asc(desc.rbegin(), desc.rend());
        return PolySpec(std::move(asc));
    }
    Poly asc = PolyParser(text).parse();
    if (asc.size() < 2 || asc.back() == 0)
        throw ParseError("polynomial must have degree >= 1", 0);
    return PolySpec(std::move(asc));
}

QuadExt parse_point(const std::string& text) { return PointParser(text).parse(); }

} // namespace dynheight
