#include "vbx/expression.hpp"

#include <algorithm>
#include <deque>
#include <utility>

namespace vbx {

namespace {

int rat_cmp(const Rational& a, const Rational& b) {
    const int c = cmp(a, b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int func_rank(Func f) {
    switch (f) {
        case Func::Sin: return 0;
        case Func::Cos: return 1;
        case Func::Exp: return 2;
        case Func::Ln: return 3;
    }
    return 4;
}

int kind_rank(FactorBase::Kind k) {
    switch (k) {
        case FactorBase::Kind::Numeric: return 0;
        case FactorBase::Kind::Aux: return 1;
        case FactorBase::Kind::Coord: return 2;
        case FactorBase::Kind::Call: return 3;
        case FactorBase::Kind::Sum: return 4;
    }
    return 5;
}

int compare_base(const FactorBase& a, const FactorBase& b) {
    const int ra = kind_rank(a.kind), rb = kind_rank(b.kind);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a.kind) {
        case FactorBase::Kind::Numeric: return rat_cmp(a.number, b.number);
        case FactorBase::Kind::Aux: return 0;
        case FactorBase::Kind::Coord: return compare(a.coord, b.coord);
        case FactorBase::Kind::Call: {
            const int fa = func_rank(a.fn), fb = func_rank(b.fn);
            if (fa != fb) return fa < fb ? -1 : 1;
            return compare(*a.sub, *b.sub);
        }
        case FactorBase::Kind::Sum: return compare(*a.sub, *b.sub);
    }
    return 0;
}

// Base order first; among equal bases the larger exponent sorts first.
int compare_factor(const Factor& a, const Factor& b) {
    const int c = compare_base(a.base, b.base);
    if (c != 0) return c;
    return -rat_cmp(a.exponent, b.exponent);
}

int compare_factor_list(const std::vector<Factor>& a, const std::vector<Factor>& b) {
    const size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        const int c = compare_factor(a[i], b[i]);
        if (c != 0) return c;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

Rational term_weight(const Term& t) {
    Rational w(0);
    for (const auto& f : t.factors) w += f.exponent;
    return w;
}

// Graded order: higher total exponent weight first, then the factor list.
int compare_term_key(const Term& a, const Term& b) {
    const int w = rat_cmp(term_weight(a), term_weight(b));
    if (w != 0) return -w;
    return compare_factor_list(a.factors, b.factors);
}

int compare_term_full(const Term& a, const Term& b) {
    const int c = compare_term_key(a, b);
    if (c != 0) return c;
    return rat_cmp(a.coeff, b.coeff);
}

bool is_positive_integer(const Rational& r) {
    return is_integer(r) && sgn(r) > 0;
}

FactorBase numeric_base(const Rational& c) {
    FactorBase b;
    b.kind = FactorBase::Kind::Numeric;
    b.number = c;
    return b;
}

FactorBase coord_base(const Coordinate& c) {
    FactorBase b;
    b.kind = FactorBase::Kind::Coord;
    b.coord = c;
    return b;
}

FactorBase call_base(Func fn, const Expression& arg) {
    FactorBase b;
    b.kind = FactorBase::Kind::Call;
    b.fn = fn;
    b.sub = std::make_shared<Expression>(arg);
    return b;
}

FactorBase sum_base(const Expression& body) {
    FactorBase b;
    b.kind = FactorBase::Kind::Sum;
    b.sub = std::make_shared<Expression>(body);
    return b;
}

FactorBase aux_base() {
    FactorBase b;
    b.kind = FactorBase::Kind::Aux;
    return b;
}

// ---------------------------------------------------------------------------
// Plain polynomial arithmetic used by the absorption rule.

using Mono = std::vector<std::pair<Coordinate, long>>;  // sorted by coordinate

long mono_degree(const Mono& m) {
    long d = 0;
    for (const auto& [c, e] : m) d += e;
    return d;
}

// Monomial order matching compare_term_key on plain terms: graded, then
// earlier coordinates more significant with larger exponents first.
// "Before" means larger in the monomial order.
bool mono_before(const Mono& a, const Mono& b) {
    const long da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    const size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        const int c = compare(a[i].first, b[i].first);
        if (c != 0) return c < 0;
        if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() < b.size();
}

struct MonoBefore {
    bool operator()(const Mono& a, const Mono& b) const { return mono_before(a, b); }
};

using Poly = std::map<Mono, Rational, MonoBefore>;

bool mono_divides(const Mono& d, const Mono& m) {
    size_t j = 0;
    for (const auto& [c, e] : d) {
        while (j < m.size() && compare(m[j].first, c) < 0) ++j;
        if (j >= m.size() || !(m[j].first == c) || m[j].second < e) return false;
    }
    return true;
}

Mono mono_div(const Mono& m, const Mono& d) {
    Mono out;
    size_t j = 0;
    for (const auto& [c, e] : m) {
        long rem = e;
        if (j < d.size() && d[j].first == c) {
            rem -= d[j].second;
            ++j;
        }
        if (rem != 0) out.emplace_back(c, rem);
    }
    return out;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && compare(a[i].first, b[j].first) < 0)) {
            out.push_back(a[i++]);
        } else if (i >= a.size() || compare(b[j].first, a[i].first) < 0) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

void poly_add_monomial(Poly& p, const Mono& m, const Rational& c) {
    auto it = p.find(m);
    if (it == p.end()) {
        if (sgn(c) != 0) p.emplace(m, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) p.erase(it);
}

// Division with remainder by a single divisor; every monomial of the
// remainder is indivisible by the divisor's leading monomial.
std::pair<Poly, Poly> poly_divrem(const Poly& p, const Poly& u) {
    Poly q, r;
    Poly work = p;
    const auto& [lead_m, lead_c] = *u.begin();
    while (!work.empty()) {
        auto it = work.begin();
        const Mono m = it->first;
        const Rational c = it->second;
        if (mono_divides(lead_m, m)) {
            const Mono tm = mono_div(m, lead_m);
            Rational tc = c / lead_c;
            poly_add_monomial(q, tm, tc);
            for (const auto& [um, uc] : u) {
                Rational sub = tc * uc;
                poly_add_monomial(work, mono_mul(tm, um), -sub);
            }
        } else {
            poly_add_monomial(r, m, c);
            work.erase(work.begin());
        }
    }
    return {q, r};
}

}  // namespace

// ---------------------------------------------------------------------------
// Canonicalizing term builder.

namespace {

Expression expr_from_single_term(Term t);
Expression pow_int_expr(const Expression& u, long k);

struct TermBuilder {
    Rational coeff{1};
    std::vector<Factor> factors;
    std::vector<Expression> expansions;
    bool zero = false;

    void mul_coeff(const Rational& c) {
        if (sgn(c) == 0) {
            zero = true;
            return;
        }
        coeff *= c;
    }

    void apply_numeric(const Rational& c, const Rational& e) {
        if (sgn(c) == 0) {
            if (sgn(e) < 0) throw DivisionByZero();
            if (sgn(e) > 0) zero = true;
            return;
        }
        const long i = floor_to_long(e);
        if (i != 0) mul_coeff(rat_pow(c, i));
        Rational f = e - Rational(i);
        if (sgn(f) == 0) return;
        if (!f.get_den().fits_ulong_p())
            throw InternalError("exponent denominator overflow");
        const unsigned long q = f.get_den().get_ui();
        if (!f.get_num().fits_slong_p())
            throw InternalError("exponent numerator overflow");
        const long p = f.get_num().get_si();
        Rational root;
        if (exact_root(c, q, &root)) {
            mul_coeff(rat_pow(root, p));
        } else {
            factors.push_back(Factor{numeric_base(c), f});
        }
    }

    void apply_single_term(const Term& t, const Rational& e) {
        apply_numeric(t.coeff, e);
        for (const auto& f : t.factors) {
            Rational ne = f.exponent * e;
            apply(f.base, ne);
        }
    }

    void apply_sum(const Expression& u, const Rational& e) {
        if (u.is_zero()) {
            if (sgn(e) < 0) throw DivisionByZero();
            zero = true;
            return;
        }
        if (u.terms().size() == 1) {
            apply_single_term(u.terms().front(), e);
            return;
        }
        if (is_positive_integer(e)) {
            expansions.push_back(pow_int_expr(u, to_long(e)));
            return;
        }
        // Extract positive rational content.
        BigInt gnum = 0, lden = 1;
        for (const auto& t : u.terms()) {
            BigInt an = abs(t.coeff.get_num());
            mpz_gcd(gnum.get_mpz_t(), gnum.get_mpz_t(), an.get_mpz_t());
            mpz_lcm(lden.get_mpz_t(), lden.get_mpz_t(), t.coeff.get_den().get_mpz_t());
        }
        Rational content(gnum, lden);
        content.canonicalize();
        bool negate = false;
        if (is_integer(e) && sgn(u.terms().front().coeff) < 0) negate = true;
        std::vector<Term> body = u.terms();
        for (auto& t : body) {
            t.coeff /= content;
            if (negate) t.coeff = -t.coeff;
        }
        Expression un;
        un = Expression::from_terms(std::move(body));
        apply_numeric(content, e);
        if (negate) {
            // (-1)^e with integer e.
            if (to_long(e) % 2 != 0) mul_coeff(Rational(-1));
        }
        if (!is_integer(e) && sgn(e) > 0 && cmp(e, Rational(1)) > 0) {
            const long i = floor_to_long(e);
            expansions.push_back(pow_int_expr(un, i));
            factors.push_back(Factor{sum_base(un), e - Rational(i)});
        } else {
            factors.push_back(Factor{sum_base(un), e});
        }
    }

    void apply(const FactorBase& b, const Rational& e) {
        if (zero || sgn(e) == 0) return;
        switch (b.kind) {
            case FactorBase::Kind::Numeric: apply_numeric(b.number, e); break;
            case FactorBase::Kind::Sum: apply_sum(*b.sub, e); break;
            default: factors.push_back(Factor{b, e}); break;
        }
    }

    void apply(const Factor& f) { apply(f.base, f.exponent); }

    // Merge duplicate bases and re-establish per-kind exponent constraints.
    Expression build() && {
        if (zero) return Expression();
        for (int round = 0; round < 64; ++round) {
            std::sort(factors.begin(), factors.end(),
                      [](const Factor& a, const Factor& b) { return compare_factor(a, b) < 0; });
            std::vector<Factor> merged;
            for (auto& f : factors) {
                if (!merged.empty() && compare_base(merged.back().base, f.base) == 0) {
                    merged.back().exponent += f.exponent;
                } else {
                    merged.push_back(std::move(f));
                }
            }
            std::vector<Factor> keep;
            std::vector<Factor> redo;
            for (auto& f : merged) {
                if (sgn(f.exponent) == 0) continue;
                bool violation = false;
                if (f.base.kind == FactorBase::Kind::Numeric) {
                    violation = sgn(f.exponent) <= 0 || cmp(f.exponent, Rational(1)) >= 0;
                } else if (f.base.kind == FactorBase::Kind::Sum) {
                    violation = cmp(f.exponent, Rational(1)) >= 0;
                }
                (violation ? redo : keep).push_back(std::move(f));
            }
            factors = std::move(keep);
            if (redo.empty()) {
                Term t;
                t.coeff = coeff;
                t.factors = std::move(factors);
                Expression result = expr_from_single_term(std::move(t));
                for (const auto& x : expansions) result = result * x;
                return result;
            }
            for (const auto& f : redo) apply(f.base, f.exponent);
            if (zero) return Expression();
        }
        throw InternalError("factor canonicalization did not stabilize");
    }
};

Expression expr_from_single_term(Term t) {
    std::vector<Term> ts;
    if (sgn(t.coeff) != 0) ts.push_back(std::move(t));
    return Expression::from_terms(std::move(ts));
}

Expression pow_int_expr(const Expression& u, long k) {
    if (k < 1) throw InternalError("pow_int_expr needs a positive power");
    Expression acc = u;
    Expression result = Expression::constant(Rational(1));
    long n = k;
    while (n > 0) {
        if (n & 1) result = result * acc;
        n >>= 1;
        if (n > 0) acc = acc * acc;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Absorption: reduce plain polynomial cofactors against sum bases held at
// negative exponents, using division with remainder.

bool factor_is_plain(const Factor& f) {
    return f.base.kind == FactorBase::Kind::Coord && is_positive_integer(f.exponent);
}

bool expr_is_plain_poly(const Expression& e) {
    for (const auto& t : e.terms())
        for (const auto& f : t.factors)
            if (!factor_is_plain(f)) return false;
    return true;
}

Poly poly_of_plain(const Expression& e) {
    Poly p;
    for (const auto& t : e.terms()) {
        Mono m;
        for (const auto& f : t.factors) m.emplace_back(f.base.coord, to_long(f.exponent));
        poly_add_monomial(p, m, t.coeff);
    }
    return p;
}

struct SigLess {
    bool operator()(const std::vector<Factor>& a, const std::vector<Factor>& b) const {
        return compare_factor_list(a, b) < 0;
    }
};

bool terms_have_negative_sum(const std::vector<Term>& ts) {
    for (const auto& t : ts)
        for (const auto& f : t.factors)
            if (f.base.kind == FactorBase::Kind::Sum && sgn(f.exponent) < 0) return true;
    return false;
}

// Returns true and rewrites `ts` if any reduction happened.
bool absorb_pass(std::vector<Term>& ts) {
    using Sig = std::vector<Factor>;
    std::map<Sig, Poly, SigLess> done;
    std::deque<std::pair<Sig, Poly>> work;

    for (const auto& t : ts) {
        Sig sig;
        Mono mono;
        for (const auto& f : t.factors) {
            if (factor_is_plain(f)) {
                mono.emplace_back(f.base.coord, to_long(f.exponent));
            } else {
                sig.push_back(f);
            }
        }
        std::sort(mono.begin(), mono.end(), [](const auto& a, const auto& b) {
            return compare(a.first, b.first) < 0;
        });
        Poly p;
        poly_add_monomial(p, mono, t.coeff);
        auto it = work.begin();
        for (; it != work.end(); ++it)
            if (compare_factor_list(it->first, sig) == 0) break;
        if (it != work.end()) {
            for (const auto& [m, c] : p) poly_add_monomial(it->second, m, c);
        } else {
            work.emplace_back(std::move(sig), std::move(p));
        }
    }

    bool changed = false;
    int guard = 0;
    while (!work.empty()) {
        if (++guard > 10000) throw InternalError("absorption did not terminate");
        auto [sig, p] = std::move(work.front());
        work.pop_front();
        if (p.empty()) continue;
        bool progressed = true;
        while (progressed && !p.empty()) {
            progressed = false;
            for (size_t i = 0; i < sig.size() && !p.empty(); ++i) {
                const Factor& f = sig[i];
                if (f.base.kind != FactorBase::Kind::Sum || sgn(f.exponent) >= 0) continue;
                if (!expr_is_plain_poly(*f.base.sub)) continue;
                Poly u = poly_of_plain(*f.base.sub);
                auto [q, r] = poly_divrem(p, u);
                if (q.empty()) continue;
                Sig promoted = sig;
                promoted[i].exponent += 1;
                if (sgn(promoted[i].exponent) == 0) promoted.erase(promoted.begin() + i);
                work.emplace_back(std::move(promoted), std::move(q));
                p = std::move(r);
                progressed = true;
                changed = true;
            }
        }
        if (!p.empty()) {
            auto it = done.find(sig);
            if (it == done.end()) {
                done.emplace(std::move(sig), std::move(p));
            } else {
                // Remainders against the same divisors stay reduced under
                // addition monomial-wise, so no reprocessing is needed.
                for (const auto& [m, c] : p) poly_add_monomial(it->second, m, c);
            }
        }
    }

    if (!changed) return false;
    std::vector<Term> out;
    for (const auto& [sig, p] : done) {
        for (const auto& [m, c] : p) {
            TermBuilder b;
            b.coeff = c;
            for (const auto& f : sig) b.apply(f);
            for (const auto& [coord, e] : m) b.apply(coord_base(coord), Rational(e));
            Expression piece = std::move(b).build();
            for (const auto& t : piece.terms()) out.push_back(t);
        }
    }
    ts = std::move(out);
    return true;
}

std::vector<Term> merge_terms(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(),
              [](const Term& a, const Term& b) { return compare_term_key(a, b) < 0; });
    std::vector<Term> out;
    for (auto& t : ts) {
        if (sgn(t.coeff) == 0) continue;
        if (!out.empty() && compare_term_key(out.back(), t) == 0) {
            out.back().coeff += t.coeff;
            if (sgn(out.back().coeff) == 0) out.pop_back();
        } else {
            out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Expression interface.

Expression Expression::from_terms(std::vector<Term> raw) {
    std::vector<Term> ts = merge_terms(std::move(raw));
    while (terms_have_negative_sum(ts) && absorb_pass(ts)) {
        ts = merge_terms(std::move(ts));
    }
    Expression e;
    e.terms_ = std::move(ts);
    return e;
}

Expression Expression::constant(const Rational& value) {
    Term t;
    t.coeff = value;
    return expr_from_single_term(std::move(t));
}

Expression Expression::coordinate(const Coordinate& c) {
    if (c.index < 1 || c.order < 0) throw InvalidArgument("malformed coordinate");
    Term t;
    t.coeff = 1;
    t.factors.push_back(Factor{coord_base(c), Rational(1)});
    return expr_from_single_term(std::move(t));
}

Expression Expression::auxiliary_scalar() {
    Term t;
    t.coeff = 1;
    t.factors.push_back(Factor{aux_base(), Rational(1)});
    return expr_from_single_term(std::move(t));
}

bool Expression::is_constant() const {
    return coordinates().empty();
}

Expression operator+(const Expression& a, const Expression& b) {
    std::vector<Term> ts = a.terms_;
    ts.insert(ts.end(), b.terms_.begin(), b.terms_.end());
    return Expression::from_terms(std::move(ts));
}

Expression operator-(const Expression& a) {
    std::vector<Term> ts = a.terms_;
    for (auto& t : ts) t.coeff = -t.coeff;
    Expression e;
    e.terms_ = std::move(ts);  // negation preserves canonical order
    return e;
}

Expression operator-(const Expression& a, const Expression& b) {
    return a + (-b);
}

Expression operator*(const Expression& a, const Expression& b) {
    if (a.is_zero() || b.is_zero()) return Expression();
    std::vector<Term> acc;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            TermBuilder builder;
            builder.coeff = ta.coeff * tb.coeff;
            for (const auto& f : ta.factors) builder.apply(f);
            for (const auto& f : tb.factors) builder.apply(f);
            Expression piece = std::move(builder).build();
            acc.insert(acc.end(), piece.terms_.begin(), piece.terms_.end());
        }
    }
    return Expression::from_terms(std::move(acc));
}

Expression operator/(const Expression& a, const Expression& b) {
    if (b.is_zero()) throw DivisionByZero();
    return a * b.pow(Rational(-1));
}

Expression& Expression::operator+=(const Expression& o) {
    *this = *this + o;
    return *this;
}

Expression& Expression::operator-=(const Expression& o) {
    *this = *this - o;
    return *this;
}

Expression& Expression::operator*=(const Expression& o) {
    *this = *this * o;
    return *this;
}

bool operator==(const Expression& a, const Expression& b) {
    return compare(a, b) == 0;
}

bool operator!=(const Expression& a, const Expression& b) {
    return compare(a, b) != 0;
}

int compare(const Expression& a, const Expression& b) {
    const size_t n = std::min(a.terms().size(), b.terms().size());
    for (size_t i = 0; i < n; ++i) {
        const int c = compare_term_full(a.terms()[i], b.terms()[i]);
        if (c != 0) return c;
    }
    if (a.terms().size() != b.terms().size())
        return a.terms().size() < b.terms().size() ? -1 : 1;
    return 0;
}

Expression Expression::pow(const Rational& exponent) const {
    if (sgn(exponent) == 0) return Expression::constant(Rational(1));
    if (is_zero()) {
        if (sgn(exponent) < 0) throw DivisionByZero();
        return Expression();
    }
    if (cmp(exponent, Rational(1)) == 0) return *this;
    if (terms_.size() == 1) {
        TermBuilder builder;
        builder.apply_single_term(terms_.front(), exponent);
        return std::move(builder).build();
    }
    if (is_positive_integer(exponent)) return pow_int_expr(*this, to_long(exponent));
    TermBuilder builder;
    builder.apply_sum(*this, exponent);
    return std::move(builder).build();
}

namespace {

Expression make_call(Func fn, const Expression& arg) {
    Term t;
    t.coeff = 1;
    t.factors.push_back(Factor{call_base(fn, arg), Rational(1)});
    return expr_from_single_term(std::move(t));
}

}  // namespace

Expression sin(const Expression& e) { return make_call(Func::Sin, e); }
Expression cos(const Expression& e) { return make_call(Func::Cos, e); }
Expression exp(const Expression& e) { return make_call(Func::Exp, e); }
Expression ln(const Expression& e) { return make_call(Func::Ln, e); }
Expression sqrt(const Expression& e) { return e.pow(Rational(1, 2)); }

namespace {

Expression base_derivative(const FactorBase& b, const Coordinate& c) {
    switch (b.kind) {
        case FactorBase::Kind::Numeric:
        case FactorBase::Kind::Aux: return Expression();
        case FactorBase::Kind::Coord:
            return b.coord == c ? Expression::constant(Rational(1)) : Expression();
        case FactorBase::Kind::Sum: return b.sub->differentiate(c);
        case FactorBase::Kind::Call: {
            if (!b.sub->mentions(c)) return Expression();
            Expression inner = b.sub->differentiate(c);
            switch (b.fn) {
                case Func::Sin: return cos(*b.sub) * inner;
                case Func::Cos: return -sin(*b.sub) * inner;
                case Func::Exp: return exp(*b.sub) * inner;
                case Func::Ln: return b.sub->pow(Rational(-1)) * inner;
            }
        }
    }
    return Expression();
}

}  // namespace

Expression Expression::differentiate(const Coordinate& c) const {
    Expression result;
    for (const auto& t : terms_) {
        for (size_t i = 0; i < t.factors.size(); ++i) {
            const Factor& f = t.factors[i];
            Expression db = base_derivative(f.base, c);
            if (db.is_zero()) continue;
            TermBuilder builder;
            builder.coeff = t.coeff * f.exponent;
            for (size_t j = 0; j < t.factors.size(); ++j)
                if (j != i) builder.apply(t.factors[j]);
            builder.apply(f.base, f.exponent - Rational(1));
            result += std::move(builder).build() * db;
        }
    }
    return result;
}

Expression Expression::substitute(
    const std::map<Coordinate, Expression, CoordinateLess>& bindings) const {
    Expression result;
    for (const auto& t : terms_) {
        Expression acc = Expression::constant(t.coeff);
        for (const auto& f : t.factors) {
            Expression base;
            switch (f.base.kind) {
                case FactorBase::Kind::Numeric: base = Expression::constant(f.base.number); break;
                case FactorBase::Kind::Aux: base = Expression::auxiliary_scalar(); break;
                case FactorBase::Kind::Coord: {
                    auto it = bindings.find(f.base.coord);
                    base = it != bindings.end() ? it->second
                                                : Expression::coordinate(f.base.coord);
                    break;
                }
                case FactorBase::Kind::Call:
                    base = make_call(f.base.fn, f.base.sub->substitute(bindings));
                    break;
                case FactorBase::Kind::Sum: base = f.base.sub->substitute(bindings); break;
            }
            acc = acc * base.pow(f.exponent);
        }
        result += acc;
    }
    return result;
}

namespace {

void collect_coordinates(const Expression& e, std::set<Coordinate, CoordinateLess>& out) {
    for (const auto& t : e.terms()) {
        for (const auto& f : t.factors) {
            switch (f.base.kind) {
                case FactorBase::Kind::Coord: out.insert(f.base.coord); break;
                case FactorBase::Kind::Call:
                case FactorBase::Kind::Sum: collect_coordinates(*f.base.sub, out); break;
                default: break;
            }
        }
    }
}

}  // namespace

std::set<Coordinate, CoordinateLess> Expression::coordinates() const {
    std::set<Coordinate, CoordinateLess> out;
    collect_coordinates(*this, out);
    return out;
}

bool Expression::mentions(const Coordinate& c) const {
    for (const auto& t : terms_) {
        for (const auto& f : t.factors) {
            switch (f.base.kind) {
                case FactorBase::Kind::Coord:
                    if (f.base.coord == c) return true;
                    break;
                case FactorBase::Kind::Call:
                case FactorBase::Kind::Sum:
                    if (f.base.sub->mentions(c)) return true;
                    break;
                default: break;
            }
        }
    }
    return false;
}

std::optional<int> Expression::max_order() const {
    std::optional<int> best;
    for (const auto& c : coordinates())
        if (!best || c.order > *best) best = c.order;
    return best;
}

bool Expression::is_polynomial() const {
    for (const auto& t : terms_) {
        for (const auto& f : t.factors) {
            switch (f.base.kind) {
                case FactorBase::Kind::Numeric:
                case FactorBase::Kind::Aux: break;
                case FactorBase::Kind::Coord:
                    if (!is_positive_integer(f.exponent)) return false;
                    break;
                case FactorBase::Kind::Call:
                case FactorBase::Kind::Sum:
                    if (!f.base.sub->coordinates().empty()) return false;
                    break;
            }
        }
    }
    return true;
}

bool Expression::is_polynomial_in(const std::set<Coordinate, CoordinateLess>& fiber) const {
    for (const auto& t : terms_) {
        for (const auto& f : t.factors) {
            switch (f.base.kind) {
                case FactorBase::Kind::Numeric:
                case FactorBase::Kind::Aux: break;
                case FactorBase::Kind::Coord:
                    if (fiber.count(f.base.coord) && !is_positive_integer(f.exponent))
                        return false;
                    break;
                case FactorBase::Kind::Call:
                case FactorBase::Kind::Sum:
                    for (const auto& c : fiber)
                        if (f.base.sub->mentions(c)) return false;
                    break;
            }
        }
    }
    return true;
}

std::optional<int> order_of(const Expression& e) {
    if (e.is_zero()) throw ZeroExpression();
    return e.max_order();
}

// ---------------------------------------------------------------------------
// Printing. The output re-parses to the same canonical form.

namespace {

std::string print_expression(const Expression& e);

std::string base_str(const FactorBase& b) {
    switch (b.kind) {
        case FactorBase::Kind::Numeric: return rational_str(b.number);
        case FactorBase::Kind::Aux: return "t";
        case FactorBase::Kind::Coord: return coordinate_str(b.coord);
        case FactorBase::Kind::Call: {
            const char* name = "";
            switch (b.fn) {
                case Func::Sin: name = "sin"; break;
                case Func::Cos: name = "cos"; break;
                case Func::Exp: name = "exp"; break;
                case Func::Ln: name = "ln"; break;
            }
            return std::string(name) + "(" + print_expression(*b.sub) + ")";
        }
        case FactorBase::Kind::Sum: return "(" + print_expression(*b.sub) + ")";
    }
    return "";
}

// Inner text for sqrt(...) wrapping, which supplies its own parentheses.
std::string sqrt_inner_str(const FactorBase& b) {
    if (b.kind == FactorBase::Kind::Sum) return print_expression(*b.sub);
    return base_str(b);
}

// Renders base^e for positive rational e as one or two "*"-joined pieces.
std::vector<std::string> factor_pieces(const FactorBase& b, const Rational& e) {
    std::vector<std::string> pieces;
    const long i = floor_to_long(e);
    Rational f = e - Rational(i);
    if (i >= 1) {
        std::string s = base_str(b);
        if (i >= 2) s += "^" + std::to_string(i);
        pieces.push_back(std::move(s));
    }
    if (sgn(f) != 0) {
        // f = m / 2^k with 0 < m < 2^k.
        unsigned long den = f.get_den().get_ui();
        int k = 0;
        while (den > 1) {
            if (den % 2 != 0) throw InternalError("non-dyadic exponent in printer");
            den /= 2;
            ++k;
        }
        const long m = f.get_num().get_si();
        std::string s = sqrt_inner_str(b);
        for (int j = 0; j < k; ++j) s = "sqrt(" + s + ")";
        if (m >= 2) s += "^" + std::to_string(m);
        pieces.push_back(std::move(s));
    }
    return pieces;
}

std::string print_term_magnitude(const Term& t) {
    Rational mag = abs(t.coeff);
    std::vector<std::string> numerator;
    std::vector<std::string> denominator;
    for (const auto& f : t.factors) {
        if (sgn(f.exponent) > 0) {
            for (auto& p : factor_pieces(f.base, f.exponent)) numerator.push_back(std::move(p));
        } else {
            Rational mag_e = -f.exponent;
            for (auto& p : factor_pieces(f.base, mag_e)) denominator.push_back(std::move(p));
        }
    }
    std::string out;
    if (cmp(mag, Rational(1)) != 0 || numerator.empty()) out = rational_str(mag);
    for (const auto& p : numerator) {
        if (!out.empty()) out += "*";
        out += p;
    }
    for (const auto& p : denominator) out += "/" + p;
    return out;
}

std::string print_expression(const Expression& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : e.terms()) {
        const bool negative = sgn(t.coeff) < 0;
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        out += print_term_magnitude(t);
    }
    return out;
}

}  // namespace

std::string Expression::str() const {
    return print_expression(*this);
}

}  // namespace vbx
