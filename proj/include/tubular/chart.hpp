#pragma once

#include <functional>
#include <memory>
#include <string>

#include "tubular/laurent.hpp"
#include "tubular/subst.hpp"

namespace tubular {

// The four rings of a chart Spec k[y][t] with Z = V(t):
//   A    = k[y][t]          exact, no negative t-powers
//   U    = k[y][t, 1/t]     exact
//   XHAT = k[y][[t]]        truncated, no negative t-powers
//   W    = k[y]((t))        truncated
// Exact values are accepted in XHAT and W as elements known to all orders.
enum class RingTag { A, U, XHAT, W };

std::string tag_name(RingTag tag);
RingTag parse_tag(const std::string& text);
bool tag_is_truncated(RingTag tag);
bool tag_admits(RingTag tag, const TLaurent& value);

struct Chart {
    std::string name;
    SpacePtr space;

    const std::string& t_var() const { return space->t_name; }
    Field field() const { return space->field; }
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::string name, SpacePtr space);

// A ring element tagged with its chart and ring. The value may live in a
// widening of the chart's space (overlap rings invert extra coordinates).
class Element {
public:
    Element(ChartPtr chart, RingTag tag, TLaurent value);

    const ChartPtr& chart() const { return chart_; }
    RingTag tag() const { return tag_; }
    const TLaurent& value() const { return value_; }

    Element operator-() const;
    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);

    friend bool operator==(const Element& a, const Element& b);

private:
    ChartPtr chart_;
    RingTag tag_;
    TLaurent value_;
};

void require_compatible(const Element& a, const Element& b);

// Legal arrows: A->U, A->XHAT, U->W, XHAT->W and their composite A->W.
// Exact values entering a truncated ring are cut at `prec`.
Element embed(const Element& e, RingTag to, int prec = kDefaultPrecision);

bool is_unit(const Element& e);
bool is_unit_value(RingTag tag, const TLaurent& value);

// Inverse within the tag ring. For truncated rings `relative_prec` counts the
// significant terms of the result (capped by those of e).
Element ring_inv(const Element& e, int relative_prec = kDefaultPrecision);

// Inverse of a unit value: exact for exact monomial units, else a series.
TLaurent unit_inverse(const TLaurent& a, int relative_prec = kDefaultPrecision);

// Overlap homomorphism into `target`. Only completed rings (XHAT, W) move
// along overlaps.
Element chart_hom(const Element& e, const Substitution& sigma, ChartPtr target);

// "TAG:chart:element", e.g. "W:c1:t^-1 + O(t^4)".
std::string serialize(const Element& e);
Element parse_tagged(const std::string& text, const std::function<ChartPtr(const std::string&)>& lookup);

}  // namespace tubular
