#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tubular/laurent.hpp"

namespace tubular {

// Finite window of t-degrees [t_low, t_high) and coefficient monomials with
// total |exponent| <= y_deg.
struct Box {
    int t_low = 0;
    int t_high = 1;
    int y_deg = 0;

    Box() = default;
    Box(int lo, int hi, int yd);

    int t_width() const { return t_high - t_low; }
    // Box restricted to nonnegative t-degrees (empty boxes are reported as t_low == t_high).
    Box nonnegative() const;

    friend bool operator==(const Box&, const Box&) = default;
};

// "tmin:tmax:ydeg", e.g. "-4:5:0".
Box parse_box(const std::string& text);
std::string render_box(const Box& b);

// Monomials over `space` with total |exponent| <= y_deg, ascending grlex.
std::vector<Monomial> box_monomials(const VarSpace& space, int y_deg);

// Slot order of box coordinates: t-degree major, ascending grlex minor.
std::vector<std::pair<int, Monomial>> box_slots(const VarSpace& space, const Box& box);
std::size_t box_dimension(const VarSpace& space, const Box& box);

// Coordinates of `a` in the box. Support outside the box, or a precision
// below t_high, raises TruncationLoss unless `clip` is set.
std::vector<Scalar> box_vectorize(const TLaurent& a, const Box& box, bool clip = false);
TLaurent box_unvectorize(const SpacePtr& space, const Box& box, const std::vector<Scalar>& coords, int prec = kExact);

}  // namespace tubular
