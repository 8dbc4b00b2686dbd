#include "tubular/subst.hpp"

#include <map>

#include "tubular/error.hpp"

namespace tubular {

Substitution::Substitution(SpacePtr source, SpacePtr target, MonomialImage t_image,
                           std::vector<MonomialImage> y_images)
    : source_(std::move(source)), target_(std::move(target)), t_image_(std::move(t_image)),
      y_images_(std::move(y_images)) {
    if (t_image_.t_degree < 1) throw Error("t must map to a positive power of the target t");
    validate();
}

Substitution Substitution::into_interior(SpacePtr source, SpacePtr target, MonomialImage t_image,
                                         std::vector<MonomialImage> y_images) {
    Substitution s;
    s.source_ = std::move(source);
    s.target_ = std::move(target);
    s.t_image_ = std::move(t_image);
    s.y_images_ = std::move(y_images);
    if (s.target_->has_t()) throw Error("interior maps must land in a patch without t");
    if (s.t_image_.t_degree != 0) throw Error("interior maps send t to a monomial without t");
    s.validate();
    return s;
}

Substitution Substitution::identity(const SpacePtr& space) {
    Substitution s;
    s.source_ = space;
    s.target_ = space;
    Field f = space->field;
    std::size_t n = space->nvars();
    s.t_image_ = {Scalar::one(f), space->has_t() ? 1 : 0, Monomial(n)};
    for (std::size_t i = 0; i < n; ++i) {
        Monomial m(n);
        m.exp[i] = 1;
        s.y_images_.push_back({Scalar::one(f), 0, m});
    }
    return s;
}

void Substitution::validate() const {
    Field f = target_->field;
    if (source_->field != f) throw FieldMismatch("substitution between different fields");
    if (y_images_.size() != source_->nvars()) throw Error("substitution must give an image for every variable");
    auto check = [&](const MonomialImage& im, bool is_t) {
        if (im.coef.field() != f) throw FieldMismatch("substitution coefficient over the wrong field");
        if (im.coef.is_zero()) throw Error("substitution images must have nonzero coefficients");
        if (im.mono.size() != target_->nvars()) throw Error("substitution image has the wrong arity");
        if (!im.mono.legal_in(*target_))
            throw FlagViolation("substitution image inverts a variable that is not invertible on the target");
        if (!is_t && im.t_degree != 0) throw Error("coordinate images must not involve t");
    };
    check(t_image_, true);
    for (std::size_t i = 0; i < y_images_.size(); ++i) {
        check(y_images_[i], false);
        // Inverting y_i on the source requires its image to be a unit on the target.
        if (source_->invertible[i]) {
            if (!y_images_[i].mono.inverse().legal_in(*target_))
                throw FlagViolation("image of invertible variable '" + source_->y_names[i] + "' is not invertible");
        }
    }
    if (!source_->has_t() && target_->has_t()) throw Error("substitution from a patch without t into a chart");
}

int Substitution::image_prec(int prec) const {
    if (prec == kExact) return kExact;
    if (exact_only()) throw InsufficientPrecision("interior maps only act on exact elements");
    return prec_add(static_cast<long>(prec) * t_image_.t_degree, 0);
}

MonomialImage Substitution::apply_term(int t_exp, const Monomial& m) const {
    std::size_t n = target_->nvars();
    MonomialImage r{Scalar::one(target_->field), 0, Monomial(n)};
    if (t_exp != 0) {
        r.coef *= t_image_.coef.pow(t_exp);
        r.t_degree += t_image_.t_degree * t_exp;
        r.mono = r.mono * t_image_.mono.pow(t_exp);
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        int e = m.exp[i];
        if (e == 0) continue;
        r.coef *= y_images_[i].coef.pow(e);
        r.mono = r.mono * y_images_[i].mono.pow(e);
    }
    return r;
}

TLaurent Substitution::apply(const TLaurent& a) const {
    if (!source_->widens(*a.space_ptr()) && !a.space().widens(*source_))
        throw ChartMismatch("substitution applied to an element of another chart");
    int prec = image_prec(a.prec());
    std::map<int, std::vector<MultiPoly::Term>> by_degree;
    for (int d = a.order(); d < a.high(); ++d) {
        for (const auto& term : a.coeff(d).terms()) {
            if (term.mono.size() != source_->nvars()) throw ChartMismatch("element arity differs from substitution");
            MonomialImage im = apply_term(d, term.mono);
            if (!im.mono.legal_in(*target_))
                throw FlagViolation("substitution image has a negative power of a non-invertible variable");
            by_degree[im.t_degree].push_back({im.mono, term.coef * im.coef});
        }
    }
    if (by_degree.empty()) return TLaurent::zero(target_, prec);
    int lo = by_degree.begin()->first;
    int hi = by_degree.rbegin()->first + 1;
    std::vector<MultiPoly> cs(static_cast<std::size_t>(hi - lo));
    for (auto& [d, terms] : by_degree) cs[static_cast<std::size_t>(d - lo)] = MultiPoly::from_terms(std::move(terms));
    return TLaurent::from_coeffs(target_, lo, std::move(cs), prec);
}

Substitution Substitution::compose_after(const Substitution& first) const {
    if (!source_->widens(*first.target_) && !first.target_->widens(*source_))
        throw ChartMismatch("substitutions do not compose");
    Substitution s;
    s.source_ = first.source_;
    s.target_ = target_;
    auto push = [&](const MonomialImage& im) {
        MonomialImage r = apply_term(im.t_degree, im.mono);
        r.coef *= im.coef;
        return r;
    };
    s.t_image_ = push(first.t_image_);
    for (const auto& y : first.y_images_) s.y_images_.push_back(push(y));
    return s;
}

bool Substitution::is_identity() const {
    if (source_->y_names != target_->y_names || source_->t_name != target_->t_name) return false;
    Substitution id = identity(target_);
    return t_image_ == id.t_image_ && y_images_ == id.y_images_;
}

Substitution Substitution::rebased(SpacePtr source, SpacePtr target) const {
    if (source->y_names != source_->y_names || source->t_name != source_->t_name ||
        target->y_names != target_->y_names || target->t_name != target_->t_name)
        throw ChartMismatch("rebased substitution must keep the variable names");
    Substitution s = *this;
    s.source_ = std::move(source);
    s.target_ = std::move(target);
    s.validate();
    return s;
}

TLaurent monomial_subst(const TLaurent& a, const Substitution& sigma) { return sigma.apply(a); }

}  // namespace tubular
