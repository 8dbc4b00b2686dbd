#include "tubular/poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "tubular/error.hpp"

namespace tubular {

std::optional<std::size_t> VarSpace::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < y_names.size(); ++i)
        if (y_names[i] == name) return i;
    return std::nullopt;
}

bool VarSpace::widens(const VarSpace& base) const {
    if (field != base.field || t_name != base.t_name || y_names != base.y_names) return false;
    for (std::size_t i = 0; i < invertible.size(); ++i)
        if (base.invertible[i] && !invertible[i]) return false;
    return true;
}

VarSpace VarSpace::widened(const std::vector<std::string>& names) const {
    VarSpace r = *this;
    for (const auto& n : names) {
        auto i = index_of(n);
        if (!i) throw Error("cannot flag unknown variable '" + n + "' invertible");
        r.invertible[*i] = true;
    }
    return r;
}

VarSpace VarSpace::fully_localized() const {
    VarSpace r = *this;
    std::fill(r.invertible.begin(), r.invertible.end(), true);
    return r;
}

SpacePtr make_space(Field field, std::string t_name, std::vector<std::string> y_names,
                    std::vector<bool> invertible) {
    if (invertible.empty()) invertible.assign(y_names.size(), false);
    if (invertible.size() != y_names.size()) throw Error("invertibility flags do not match variables");
    for (std::size_t i = 0; i < y_names.size(); ++i) {
        if (y_names[i].empty()) throw Error("empty variable name");
        if (y_names[i] == t_name) throw Error("variable '" + t_name + "' declared twice");
        for (std::size_t j = 0; j < i; ++j)
            if (y_names[i] == y_names[j]) throw Error("variable '" + y_names[i] + "' declared twice");
    }
    return std::make_shared<const VarSpace>(VarSpace{field, std::move(t_name), std::move(y_names), std::move(invertible)});
}

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || *a == *b; }

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
    if (same_space(a, b)) return;
    if (a->field != b->field) throw FieldMismatch("operands over " + a->field.name() + " and " + b->field.name());
    throw ChartMismatch("operands live in different coordinate rings");
}

bool Monomial::is_one() const {
    return std::all_of(exp.begin(), exp.end(), [](int e) { return e == 0; });
}

int Monomial::abs_degree() const {
    int d = 0;
    for (int e : exp) d += std::abs(e);
    return d;
}

int Monomial::degree() const {
    int d = 0;
    for (int e : exp) d += e;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] += o.exp[i];
    return r;
}

Monomial Monomial::pow(int k) const {
    Monomial r = *this;
    for (int& e : r.exp) e *= k;
    return r;
}

Monomial Monomial::inverse() const { return pow(-1); }

bool Monomial::legal_in(const VarSpace& space) const {
    if (exp.size() != space.nvars()) return false;
    for (std::size_t i = 0; i < exp.size(); ++i)
        if (exp[i] < 0 && !space.invertible[i]) return false;
    return true;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
    int da = a.abs_degree(), db = b.abs_degree();
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.exp.size(); ++i)
        if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? -1 : 1;
    return 0;
}

MultiPoly MultiPoly::constant(const Scalar& c, std::size_t nvars) { return term(c, Monomial(nvars)); }

MultiPoly MultiPoly::term(const Scalar& c, Monomial m) {
    MultiPoly p;
    if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
    return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
    std::map<Monomial, Scalar, GrlexLess> acc;
    for (auto& t : terms) {
        auto it = acc.find(t.mono);
        if (it == acc.end())
            acc.emplace(std::move(t.mono), std::move(t.coef));
        else
            it->second += t.coef;
    }
    MultiPoly p;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (!it->second.is_zero()) p.terms_.push_back({it->first, it->second});
    return p;
}

Scalar MultiPoly::coeff(const Monomial& m, Field f) const {
    for (const auto& t : terms_)
        if (t.mono == m) return t.coef;
    return Scalar::zero(f);
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

bool MultiPoly::is_unit_in(const VarSpace& space) const {
    if (terms_.size() != 1) return false;
    const Monomial& m = terms_[0].mono;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.exp[i] != 0 && !space.invertible[i]) return false;
    return true;
}

bool MultiPoly::legal_in(const VarSpace& space) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono.legal_in(space); });
}

int MultiPoly::abs_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.abs_degree());
    return d;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

namespace {

// Merge of two descending term lists.
std::vector<MultiPoly::Term> merge_terms(const std::vector<MultiPoly::Term>& a, const std::vector<MultiPoly::Term>& b,
                                         bool subtract) {
    std::vector<MultiPoly::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c = i == a.size() ? -1 : j == b.size() ? 1 : grlex_compare(a[i].mono, b[j].mono);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (subtract) out.back().coef = -out.back().coef;
        } else {
            Scalar s = subtract ? a[i].coef - b[j].coef : a[i].coef + b[j].coef;
            if (!s.is_zero()) out.push_back({a[i].mono, s});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1) return b.times_monomial(a.terms_[0].mono).scaled(a.terms_[0].coef);
    if (b.size() == 1) return a.times_monomial(b.terms_[0].mono).scaled(b.terms_[0].coef);
    std::vector<MultiPoly::Term> prod;
    prod.reserve(a.size() * b.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) prod.push_back({x.mono * y.mono, x.coef * y.coef});
    return MultiPoly::from_terms(std::move(prod));
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
    if (c.is_zero()) return {};
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

MultiPoly MultiPoly::times_monomial(const Monomial& m) const {
    // Multiplying by a monomial preserves relative grlex order only for
    // nonnegative exponent vectors, so re-sort in general.
    auto nonneg = [](const Monomial& x) { return std::all_of(x.exp.begin(), x.exp.end(), [](int e) { return e >= 0; }); };
    bool all_nonneg = nonneg(m) && std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return nonneg(t.mono); });
    std::vector<Term> ts = terms_;
    for (auto& t : ts) t.mono = t.mono * m;
    MultiPoly r;
    if (all_nonneg) {
        r.terms_ = std::move(ts);
        return r;
    }
    return from_terms(std::move(ts));
}

}  // namespace tubular
