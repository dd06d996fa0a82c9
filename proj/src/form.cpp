#include "vbx/form.hpp"

#include <algorithm>

namespace vbx {

namespace {

int compare_diff_list(const std::vector<Coordinate>& a, const std::vector<Coordinate>& b) {
    const size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        const int c = compare(a[i], b[i]);
        if (c != 0) return c;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

// Sorts diffs in place; returns the permutation sign, or 0 on a repeat.
int sort_diffs(std::vector<Coordinate>& diffs) {
    int sign = 1;
    for (size_t i = 1; i < diffs.size(); ++i) {
        size_t j = i;
        while (j > 0 && compare(diffs[j], diffs[j - 1]) < 0) {
            std::swap(diffs[j], diffs[j - 1]);
            sign = -sign;
            --j;
        }
    }
    for (size_t i = 1; i < diffs.size(); ++i)
        if (diffs[i] == diffs[i - 1]) return 0;
    return sign;
}

}  // namespace

DifferentialForm::DifferentialForm(int degree) : degree_(degree) {
    if (degree < 0) throw InvalidArgument("negative form degree");
}

DifferentialForm DifferentialForm::scalar(const Expression& e) {
    DifferentialForm f(0);
    if (!e.is_zero()) f.terms_.push_back(FormTerm{e, {}});
    return f;
}

DifferentialForm DifferentialForm::from_terms(int degree, std::vector<FormTerm> raw) {
    DifferentialForm f(degree);
    std::vector<FormTerm> ts;
    for (auto& t : raw) {
        if (static_cast<int>(t.diffs.size()) != degree)
            throw InvalidArgument("wedge term degree mismatch");
        const int sign = sort_diffs(t.diffs);
        if (sign == 0 || t.coeff.is_zero()) continue;
        if (sign < 0) t.coeff = -t.coeff;
        ts.push_back(std::move(t));
    }
    std::sort(ts.begin(), ts.end(), [](const FormTerm& a, const FormTerm& b) {
        return compare_diff_list(a.diffs, b.diffs) < 0;
    });
    for (auto& t : ts) {
        if (!f.terms_.empty() && compare_diff_list(f.terms_.back().diffs, t.diffs) == 0) {
            f.terms_.back().coeff += t.coeff;
            if (f.terms_.back().coeff.is_zero()) f.terms_.pop_back();
        } else {
            f.terms_.push_back(std::move(t));
        }
    }
    return f;
}

Expression DifferentialForm::scalar_part() const {
    if (degree_ != 0) throw InvalidArgument("scalar_part of a positive-degree form");
    if (terms_.empty()) return Expression();
    return terms_.front().coeff;
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.degree() != b.degree()) throw InvalidArgument("form degree mismatch in sum");
    std::vector<FormTerm> ts = a.terms();
    ts.insert(ts.end(), b.terms().begin(), b.terms().end());
    return DifferentialForm::from_terms(a.degree(), std::move(ts));
}

DifferentialForm operator-(const DifferentialForm& a) {
    std::vector<FormTerm> ts = a.terms();
    for (auto& t : ts) t.coeff = -t.coeff;
    return DifferentialForm::from_terms(a.degree(), std::move(ts));
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
    return a + (-b);
}

DifferentialForm operator*(const Expression& s, const DifferentialForm& f) {
    std::vector<FormTerm> ts = f.terms();
    for (auto& t : ts) t.coeff = s * t.coeff;
    return DifferentialForm::from_terms(f.degree(), std::move(ts));
}

DifferentialForm operator*(const DifferentialForm& f, const Expression& s) {
    return s * f;
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& o) {
    *this = *this + o;
    return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& o) {
    *this = *this - o;
    return *this;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.degree() != b.degree() || a.terms().size() != b.terms().size()) return false;
    for (size_t i = 0; i < a.terms().size(); ++i) {
        if (compare_diff_list(a.terms()[i].diffs, b.terms()[i].diffs) != 0) return false;
        if (a.terms()[i].coeff != b.terms()[i].coeff) return false;
    }
    return true;
}

bool operator!=(const DifferentialForm& a, const DifferentialForm& b) {
    return !(a == b);
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    std::vector<FormTerm> ts;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            FormTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.diffs = ta.diffs;
            t.diffs.insert(t.diffs.end(), tb.diffs.begin(), tb.diffs.end());
            ts.push_back(std::move(t));
        }
    }
    return DifferentialForm::from_terms(a.degree() + b.degree(), std::move(ts));
}

DifferentialForm exterior_d(const Expression& f) {
    std::vector<FormTerm> ts;
    for (const auto& c : f.coordinates()) {
        Expression partial = f.differentiate(c);
        if (partial.is_zero()) continue;
        ts.push_back(FormTerm{std::move(partial), {c}});
    }
    return DifferentialForm::from_terms(1, std::move(ts));
}

DifferentialForm exterior_d(const DifferentialForm& f) {
    std::vector<FormTerm> ts;
    for (const auto& t : f.terms()) {
        for (const auto& c : t.coeff.coordinates()) {
            Expression partial = t.coeff.differentiate(c);
            if (partial.is_zero()) continue;
            FormTerm nt;
            nt.coeff = std::move(partial);
            nt.diffs.reserve(t.diffs.size() + 1);
            nt.diffs.push_back(c);
            nt.diffs.insert(nt.diffs.end(), t.diffs.begin(), t.diffs.end());
            ts.push_back(std::move(nt));
        }
    }
    return DifferentialForm::from_terms(f.degree() + 1, std::move(ts));
}

Expression VectorField::apply(const Expression& f) const {
    Expression out;
    for (const auto& c : f.coordinates()) {
        auto it = components.find(c);
        if (it == components.end() || it->second.is_zero()) continue;
        out += it->second * f.differentiate(c);
    }
    return out;
}

DifferentialForm contract(const VectorField& x, const DifferentialForm& f) {
    if (f.degree() == 0) throw InvalidArgument("contraction of a degree-0 form");
    std::vector<FormTerm> ts;
    for (const auto& t : f.terms()) {
        for (size_t k = 0; k < t.diffs.size(); ++k) {
            auto it = x.components.find(t.diffs[k]);
            if (it == x.components.end() || it->second.is_zero()) continue;
            FormTerm nt;
            nt.coeff = t.coeff * it->second;
            if (k % 2 != 0) nt.coeff = -nt.coeff;
            nt.diffs = t.diffs;
            nt.diffs.erase(nt.diffs.begin() + k);
            ts.push_back(std::move(nt));
        }
    }
    return DifferentialForm::from_terms(f.degree() - 1, std::move(ts));
}

DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& f) {
    if (f.degree() == 0) {
        return DifferentialForm::scalar(x.apply(f.scalar_part()));
    }
    return exterior_d(contract(x, f)) + contract(x, exterior_d(f));
}

// ---------------------------------------------------------------------------

namespace {

// A coefficient prints bare when it is a single product term; sums need
// parentheses before "*".
bool needs_parens(const Expression& e) {
    return e.terms().size() > 1;
}

}  // namespace

std::string DifferentialForm::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        std::string coeff_str;
        bool negative = false;
        if (needs_parens(t.coeff)) {
            coeff_str = "(" + t.coeff.str() + ")";
        } else {
            Expression mag = t.coeff;
            if (sgn(mag.terms().front().coeff) < 0) {
                negative = true;
                mag = -mag;
            }
            const Expression one = Expression::constant(Rational(1));
            if (!(mag == one) || t.diffs.empty()) coeff_str = mag.str();
        }
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        std::string wedge_str;
        for (size_t i = 0; i < t.diffs.size(); ++i) {
            if (i > 0) wedge_str += " /\\ ";
            wedge_str += differential_str(t.diffs[i]);
        }
        if (!coeff_str.empty() && !wedge_str.empty()) {
            out += coeff_str + "*" + wedge_str;
        } else {
            out += coeff_str + wedge_str;
        }
    }
    return out;
}

}  // namespace vbx
