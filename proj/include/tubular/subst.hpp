#pragma once

#include <vector>

#include "tubular/laurent.hpp"

namespace tubular {

// Image of one variable: coef * t^t_degree * y'^mono in the target ring.
struct MonomialImage {
    Scalar coef;
    int t_degree = 0;
    Monomial mono;

    friend bool operator==(const MonomialImage&, const MonomialImage&) = default;
};

// Ring homomorphism k[y][t] -> k[y'][t'] determined by monomial images
//   t -> c * t'^d * m_t(y'),  y_i -> c_i * m_i(y').
// Chart-to-chart maps have d >= 1, which makes them continuous for the
// t-adic topology: the image of t^N is t'^(dN) times a unit monomial, so
// O(t^N) maps to O(t'^(dN)) with no further correction. Maps into an
// interior patch send t to a degree-0 monomial and only act on exact elements.
class Substitution {
public:
    Substitution(SpacePtr source, SpacePtr target, MonomialImage t_image, std::vector<MonomialImage> y_images);
    static Substitution identity(const SpacePtr& space);
    static Substitution into_interior(SpacePtr source, SpacePtr target, MonomialImage t_image,
                                      std::vector<MonomialImage> y_images);

    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    const MonomialImage& t_image() const { return t_image_; }
    const std::vector<MonomialImage>& y_images() const { return y_images_; }
    bool exact_only() const { return t_image_.t_degree == 0; }

    // Image precision of O(t^N).
    int image_prec(int prec) const;
    TLaurent apply(const TLaurent& a) const;
    // Image of the single term coef * t^e * y^m.
    MonomialImage apply_term(int t_exp, const Monomial& m) const;

    // this after first:  x -> this(first(x)).
    Substitution compose_after(const Substitution& first) const;
    bool is_identity() const;

    // Same variable images between other spaces with the same names (for
    // instance a widened source or a fully localized target). Revalidated.
    Substitution rebased(SpacePtr source, SpacePtr target) const;

private:
    Substitution() = default;
    void validate() const;

    SpacePtr source_;
    SpacePtr target_;
    MonomialImage t_image_;
    std::vector<MonomialImage> y_images_;
};

TLaurent monomial_subst(const TLaurent& a, const Substitution& sigma);

}  // namespace tubular
