#include "tubular/laurent.hpp"

#include <algorithm>

#include "tubular/error.hpp"

namespace tubular {

namespace {

const MultiPoly kZeroPoly{};

}  // namespace

int prec_add(long a, long b) {
    if (a == kExact || b == kExact) return kExact;
    long s = a + b;
    if (s >= kExact) return kExact;
    if (s <= INT_MIN) return INT_MIN + 1;
    return static_cast<int>(s);
}

TLaurent::TLaurent(SpacePtr space) : space_(std::move(space)) {}

TLaurent TLaurent::zero(SpacePtr space, int prec) {
    TLaurent r(std::move(space));
    r.prec_ = prec;
    return r;
}

TLaurent TLaurent::constant(SpacePtr space, const Scalar& c) {
    std::size_t n = space->nvars();
    return from_coeffs(std::move(space), 0, {MultiPoly::constant(c, n)});
}

TLaurent TLaurent::monomial(SpacePtr space, const Scalar& c, int t_exp, Monomial y) {
    return from_coeffs(std::move(space), t_exp, {MultiPoly::term(c, std::move(y))});
}

TLaurent TLaurent::from_coeffs(SpacePtr space, int low, std::vector<MultiPoly> coeffs, int prec) {
    TLaurent r(std::move(space));
    r.low_ = low;
    r.prec_ = prec;
    r.coeffs_ = std::move(coeffs);
    r.normalize();
    r.validate();
    return r;
}

void TLaurent::normalize() {
    if (prec_ != kExact) {
        long keep = static_cast<long>(prec_) - low_;
        if (keep <= 0)
            coeffs_.clear();
        else if (static_cast<long>(coeffs_.size()) > keep)
            coeffs_.resize(static_cast<std::size_t>(keep));
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    if (lead) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        low_ += static_cast<int>(lead);
    }
}

void TLaurent::validate() const {
    for (const auto& c : coeffs_) {
        for (const auto& t : c.terms()) {
            if (t.coef.field() != space_->field) throw FieldMismatch("coefficient over " + t.coef.field().name());
            if (t.mono.size() != space_->nvars()) throw ChartMismatch("monomial has the wrong number of variables");
            if (!t.mono.legal_in(*space_))
                throw FlagViolation("negative exponent on a non-invertible variable");
        }
    }
    if (!space_->has_t()) {
        if (prec_ != kExact) throw FlagViolation("interior patch elements are exact");
        if (!coeffs_.empty() && (low_ != 0 || coeffs_.size() != 1))
            throw FlagViolation("interior patch elements do not involve t");
    }
}

const MultiPoly& TLaurent::coeff(int degree) const {
    if (coeffs_.empty() || degree < low_ || degree >= low_ + static_cast<int>(coeffs_.size())) return kZeroPoly;
    return coeffs_[static_cast<std::size_t>(degree - low_)];
}

const MultiPoly& TLaurent::lowest_coeff() const { return coeffs_.empty() ? kZeroPoly : coeffs_.front(); }

int TLaurent::relative_prec() const {
    if (prec_ == kExact) return kExact;
    return prec_ - order();
}

TLaurent TLaurent::operator-() const {
    TLaurent r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

namespace {

TLaurent add_impl(const TLaurent& a, const TLaurent& b, bool subtract) {
    require_same_space(a.space_ptr(), b.space_ptr());
    int prec = std::min(a.prec(), b.prec());
    if (a.is_zero() && b.is_zero()) return TLaurent::zero(a.space_ptr(), prec);
    int lo = std::min(a.is_zero() ? b.order() : a.order(), b.is_zero() ? a.order() : b.order());
    int hi = std::max(a.is_zero() ? INT_MIN : a.high(), b.is_zero() ? INT_MIN : b.high());
    if (prec != kExact) hi = std::min(hi, prec);
    std::vector<MultiPoly> cs;
    if (hi > lo) {
        cs.resize(static_cast<std::size_t>(hi - lo));
        for (int d = lo; d < hi; ++d) {
            MultiPoly c = a.coeff(d);
            if (subtract)
                c -= b.coeff(d);
            else
                c += b.coeff(d);
            cs[static_cast<std::size_t>(d - lo)] = std::move(c);
        }
    }
    return TLaurent::from_coeffs(a.space_ptr(), lo, std::move(cs), prec);
}

}  // namespace

TLaurent& TLaurent::operator+=(const TLaurent& o) { return *this = add_impl(*this, o, false); }

TLaurent& TLaurent::operator-=(const TLaurent& o) { return *this = add_impl(*this, o, true); }

TLaurent operator*(const TLaurent& a, const TLaurent& b) {
    require_same_space(a.space_ptr(), b.space_ptr());
    int prec = std::min(prec_add(a.prec(), b.order()), prec_add(b.prec(), a.order()));
    if (a.is_zero() || b.is_zero()) return TLaurent::zero(a.space_ptr(), prec);
    int lo = a.low_ + b.low_;
    long hi = static_cast<long>(a.high()) + b.high() - 1;
    if (prec != kExact) hi = std::min<long>(hi, prec);
    if (hi <= lo) return TLaurent::zero(a.space_ptr(), prec);
    std::vector<MultiPoly> cs(static_cast<std::size_t>(hi - lo));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            std::size_t k = i + j;
            if (k >= cs.size()) break;
            if (b.coeffs_[j].is_zero()) continue;
            cs[k] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return TLaurent::from_coeffs(a.space_ptr(), lo, std::move(cs), prec);
}

TLaurent TLaurent::scaled(const Scalar& c) const {
    if (c.field() != field()) throw FieldMismatch("scalar over " + c.field().name());
    TLaurent r = *this;
    for (auto& x : r.coeffs_) x = x.scaled(c);
    r.normalize();
    return r;
}

TLaurent TLaurent::times_monomial(const Monomial& m) const {
    TLaurent r = *this;
    for (auto& x : r.coeffs_) x = x.times_monomial(m);
    r.validate();
    return r;
}

TLaurent TLaurent::shifted(int k) const {
    TLaurent r = *this;
    if (!r.coeffs_.empty()) r.low_ += k;
    r.prec_ = prec_add(prec_, k);
    r.validate();
    return r;
}

TLaurent TLaurent::truncated(int prec) const {
    TLaurent r = *this;
    r.prec_ = std::min(prec_, prec);
    r.normalize();
    return r;
}

TLaurent TLaurent::tail_from(int d) const {
    if (is_zero() || d <= low_) return *this;
    std::vector<MultiPoly> cs;
    for (int e = d; e < high(); ++e) cs.push_back(coeff(e));
    return from_coeffs(space_, d, std::move(cs), prec_);
}

TLaurent TLaurent::head_below(int d) const {
    if (is_zero()) return TLaurent(space_);
    std::vector<MultiPoly> cs;
    for (int e = low_; e < std::min(d, high()); ++e) cs.push_back(coeff(e));
    return from_coeffs(space_, low_, std::move(cs), kExact);
}

TLaurent TLaurent::with_space(SpacePtr space) const {
    if (!space->widens(*space_) && !space_->widens(*space))
        throw ChartMismatch("cannot reinterpret element in an unrelated coordinate ring");
    TLaurent r = *this;
    r.space_ = std::move(space);
    r.validate();
    return r;
}

TLaurent TLaurent::as_exact() const {
    TLaurent r = *this;
    r.prec_ = kExact;
    return r;
}

int TLaurent::max_abs_y_degree() const {
    int d = 0;
    for (const auto& c : coeffs_) d = std::max(d, c.abs_degree());
    return d;
}

bool operator==(const TLaurent& a, const TLaurent& b) {
    if (!same_space(a.space_, b.space_)) return false;
    if (a.prec_ != b.prec_ || a.coeffs_ != b.coeffs_) return false;
    return a.coeffs_.empty() || a.low_ == b.low_;
}

Comparison compare(const TLaurent& a, const TLaurent& b) {
    TLaurent d = a - b;  // precision min(prec_a, prec_b)
    if (!d.is_zero()) return Comparison::Different;
    return a.prec() == b.prec() ? Comparison::Equal : Comparison::Indistinguishable;
}

bool agree(const TLaurent& a, const TLaurent& b) { return compare(a, b) != Comparison::Different; }

bool is_monomial_unit(const TLaurent& a) {
    return a.coeffs().size() == 1 && a.lowest_coeff().is_unit_in(a.space());
}

TLaurent laurent_inv(const TLaurent& a, int relative_prec) {
    if (a.is_zero()) throw NotAUnit("zero is not a unit");
    const MultiPoly& u = a.lowest_coeff();
    if (!u.is_unit_in(a.space())) throw NotAUnit("lowest coefficient is not a unit of the coefficient ring");
    if (relative_prec < 1) throw Error("relative precision must be positive");

    const auto& term = u.terms().front();
    MultiPoly u_inv = MultiPoly::term(term.coef.inverse(), term.mono.inverse());
    int L = a.order();

    if (a.is_exact() && relative_prec == kExact) {
        if (a.coeffs().size() != 1) throw InsufficientPrecision("exact inverse of a non-monomial needs a precision");
        return TLaurent::from_coeffs(a.space_ptr(), -L, {u_inv});
    }

    int rel = std::min(relative_prec, a.relative_prec());
    std::vector<MultiPoly> b(static_cast<std::size_t>(rel));
    b[0] = u_inv;
    MultiPoly minus_u_inv = -u_inv;
    for (int k = 1; k < rel; ++k) {
        MultiPoly acc;
        for (int j = 1; j <= k; ++j) {
            const MultiPoly& aj = a.coeff(L + j);
            if (aj.is_zero() || b[static_cast<std::size_t>(k - j)].is_zero()) continue;
            acc += aj * b[static_cast<std::size_t>(k - j)];
        }
        b[static_cast<std::size_t>(k)] = minus_u_inv * acc;
    }
    return TLaurent::from_coeffs(a.space_ptr(), -L, std::move(b), -L + rel);
}

}  // namespace tubular
