#include "vbx/parser.hpp"

#include <cctype>

namespace vbx {

namespace {

struct FactorValue {
    int sign = 1;
    Expression base;
    long power = 1;
};

struct Parser {
    const std::string& text;
    int dim;
    size_t pos = 0;

    Parser(const std::string& t, int d) : text(t), dim(d) {}

    [[noreturn]] void fail(const std::string& msg, size_t at) const {
        throw ParseError(msg, at);
    }

    bool eof() const { return pos >= text.size(); }
    char peek(size_t ahead = 0) const {
        return pos + ahead < text.size() ? text[pos + ahead] : '\0';
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool consume(char c) {
        if (!eof() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!consume(c)) fail(std::string("expected '") + c + "' " + what, pos);
    }

    std::string read_digits() {
        const size_t start = pos;
        while (!eof() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a number", start);
        return text.substr(start, pos - start);
    }

    long read_small_uint(const char* what) {
        const size_t start = pos;
        std::string digits = read_digits();
        if (digits.size() > 9) fail(std::string(what) + " is too large", start);
        return std::stol(digits);
    }

    // rational := uint ("/" uint)?, greedy: the "/" binds to the literal
    // only when a digit follows.
    Expression parse_rational() {
        BigInt num(read_digits());
        const size_t save = pos;
        skip_ws();
        if (consume('/')) {
            skip_ws();
            const size_t den_start = pos;
            if (!eof() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                BigInt den(read_digits());
                if (sgn(den) == 0) fail("zero denominator", den_start);
                Rational r(num, den);
                r.canonicalize();
                return Expression::constant(r);
            }
            pos = save;
        } else {
            pos = save;
        }
        return Expression::constant(Rational(num));
    }

    // coord := "q" uint ("'"* | "[" uint "]"), with no interior whitespace.
    Coordinate parse_coordinate_token() {
        expect('q', "to start a coordinate");
        const size_t idx_start = pos;
        if (eof() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected a coordinate index", pos);
        const long idx = read_small_uint("coordinate index");
        if (idx < 1) fail("coordinate index must be positive", idx_start);
        if (idx > dim) fail("coordinate index exceeds dimension", idx_start);
        int order = 0;
        if (peek() == '\'') {
            while (consume('\'')) ++order;
        } else if (peek() == '[') {
            ++pos;
            order = static_cast<int>(read_small_uint("derivative order"));
            expect(']', "after the derivative order");
        }
        return Coordinate{static_cast<int>(idx), order};
    }

    Expression parse_base() {
        skip_ws();
        if (eof()) fail("expected an expression", pos);
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational();
        if (c == 'q') return Expression::coordinate(parse_coordinate_token());
        if (c == '(') {
            ++pos;
            Expression e = parse_expr();
            skip_ws();
            expect(')', "to close the parenthesis");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const size_t start = pos;
            std::string name;
            while (!eof() && std::isalpha(static_cast<unsigned char>(text[pos])))
                name += text[pos++];
            skip_ws();
            expect('(', "after the function name");
            Expression arg = parse_expr();
            skip_ws();
            expect(')', "to close the function call");
            if (name == "sin") return sin(arg);
            if (name == "cos") return cos(arg);
            if (name == "exp") return exp(arg);
            if (name == "ln") return ln(arg);
            if (name == "sqrt") return sqrt(arg);
            fail("unknown function '" + name + "'", start);
        }
        fail("unexpected character", pos);
    }

    FactorValue parse_factor() {
        skip_ws();
        if (consume('-')) {
            FactorValue f = parse_factor();
            f.sign = -f.sign;
            return f;
        }
        FactorValue f;
        f.base = parse_base();
        skip_ws();
        if (consume('^')) {
            skip_ws();
            f.power = read_small_uint("exponent");
        }
        return f;
    }

    // Division applies the inverse power to the factor base directly, so
    // "1/(q1+q2)^2" keeps the sum as one inverted base.
    Expression apply_factor(Expression acc, const FactorValue& f, bool dividing) {
        const long p = dividing ? -f.power : f.power;
        acc = acc * f.base.pow(Rational(p));
        if (f.sign < 0) acc = -acc;
        return acc;
    }

    Expression parse_term() {
        FactorValue f = parse_factor();
        Expression acc = apply_factor(Expression::constant(Rational(1)), f, false);
        for (;;) {
            skip_ws();
            if (consume('*')) {
                acc = apply_factor(std::move(acc), parse_factor(), false);
            } else if (peek() == '/' && peek(1) != '\\') {
                ++pos;
                acc = apply_factor(std::move(acc), parse_factor(), true);
            } else {
                return acc;
            }
        }
    }

    Expression parse_expr() {
        Expression acc = parse_term();
        for (;;) {
            skip_ws();
            if (consume('+')) {
                acc += parse_term();
            } else if (peek() == '-') {
                ++pos;
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    Expression parse_expression_input() {
        Expression e = parse_expr();
        skip_ws();
        if (!eof()) fail("unexpected trailing input", pos);
        return e;
    }

    // ------------------------------------------------------------------
    // Form grammar.

    bool at_differential() const {
        return peek() == 'd' && peek(1) == 'q';
    }

    FormTerm parse_form_term(int sign) {
        FormTerm t;
        t.coeff = Expression::constant(Rational(sign));
        skip_ws();
        if (!at_differential()) {
            t.coeff = apply_factor(std::move(t.coeff), parse_factor(), false);
            for (;;) {
                skip_ws();
                if (consume('*')) {
                    skip_ws();
                    if (at_differential()) break;
                    t.coeff = apply_factor(std::move(t.coeff), parse_factor(), false);
                } else if (peek() == '/' && peek(1) != '\\') {
                    ++pos;
                    skip_ws();
                    if (at_differential()) fail("cannot divide by a differential", pos);
                    t.coeff = apply_factor(std::move(t.coeff), parse_factor(), true);
                } else {
                    fail("a form term needs differentials introduced by '*'", pos);
                }
            }
        }
        for (;;) {
            skip_ws();
            if (!at_differential()) fail("expected a differential", pos);
            ++pos;  // 'd'
            t.diffs.push_back(parse_coordinate_token());
            skip_ws();
            if (peek() == '/' && peek(1) == '\\') {
                pos += 2;
                continue;
            }
            return t;
        }
    }

    DifferentialForm parse_form_input() {
        skip_ws();
        // The literal "0" denotes the zero source form.
        if (peek() == '0') {
            const size_t save = pos;
            ++pos;
            skip_ws();
            if (eof()) return DifferentialForm::zero(1);
            pos = save;
        }
        std::vector<FormTerm> terms;
        int degree = -1;
        size_t term_start = pos;
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (first) {
                if (consume('-')) sign = -1;
            } else {
                if (eof()) break;
                if (consume('+')) {
                    sign = 1;
                } else if (consume('-')) {
                    sign = -1;
                } else {
                    fail("expected '+' or '-' between form terms", pos);
                }
            }
            first = false;
            skip_ws();
            term_start = pos;
            FormTerm t = parse_form_term(sign);
            if (degree < 0) {
                degree = static_cast<int>(t.diffs.size());
            } else if (degree != static_cast<int>(t.diffs.size())) {
                fail("form terms have mixed degrees", term_start);
            }
            terms.push_back(std::move(t));
        }
        return DifferentialForm::from_terms(degree, std::move(terms));
    }
};

}  // namespace

Expression parse_expression(const std::string& text, int dim) {
    if (dim < 1) throw InvalidArgument("dimension must be positive");
    Parser p(text, dim);
    return p.parse_expression_input();
}

DifferentialForm parse_form(const std::string& text, int dim) {
    if (dim < 1) throw InvalidArgument("dimension must be positive");
    Parser p(text, dim);
    return p.parse_form_input();
}

SourceForm parse_source_form(const std::string& payload, int dim) {
    if (payload.find("dq") != std::string::npos)
        return SourceForm::from_form(dim, parse_form(payload, dim));
    std::vector<std::string> pieces;
    size_t start = 0;
    for (;;) {
        const size_t semi = payload.find(';', start);
        if (semi == std::string::npos) {
            pieces.push_back(payload.substr(start));
            break;
        }
        pieces.push_back(payload.substr(start, semi - start));
        start = semi + 1;
    }
    if (static_cast<int>(pieces.size()) != dim)
        throw InvalidArgument("expected " + std::to_string(dim) +
                              " components separated by ';'");
    SourceForm eps;
    eps.dim = dim;
    for (int i = 0; i < dim; ++i) {
        try {
            eps.components.push_back(parse_expression(pieces[i], dim));
        } catch (const ParseError& e) {
            throw InvalidArgument("component " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return eps;
}

}  // namespace vbx
