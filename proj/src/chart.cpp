#include "tubular/chart.hpp"

#include "tubular/error.hpp"
#include "tubular/parse.hpp"

namespace tubular {

std::string tag_name(RingTag tag) {
    switch (tag) {
        case RingTag::A: return "A";
        case RingTag::U: return "U";
        case RingTag::XHAT: return "XHAT";
        case RingTag::W: return "W";
    }
    return "?";
}

RingTag parse_tag(const std::string& text) {
    if (text == "A") return RingTag::A;
    if (text == "U") return RingTag::U;
    if (text == "XHAT") return RingTag::XHAT;
    if (text == "W") return RingTag::W;
    throw IllegalTag("unknown ring tag '" + text + "'");
}

bool tag_is_truncated(RingTag tag) { return tag == RingTag::XHAT || tag == RingTag::W; }

bool tag_admits(RingTag tag, const TLaurent& v) {
    switch (tag) {
        case RingTag::A: return v.is_exact() && v.order() >= 0;
        case RingTag::U: return v.is_exact();
        case RingTag::XHAT: return v.order() >= 0;
        case RingTag::W: return true;
    }
    return false;
}

ChartPtr make_chart(std::string name, SpacePtr space) {
    if (!space->has_t()) throw Error("chart '" + name + "' needs a t variable");
    return std::make_shared<const Chart>(Chart{std::move(name), std::move(space)});
}

Element::Element(ChartPtr chart, RingTag tag, TLaurent value)
    : chart_(std::move(chart)), tag_(tag), value_(std::move(value)) {
    if (!value_.space().widens(*chart_->space))
        throw ChartMismatch("value does not belong to chart '" + chart_->name + "'");
    if (!tag_admits(tag_, value_))
        throw IllegalTag("value " + render(value_) + " is not an element of the " + tag_name(tag_) + " ring");
}

void require_compatible(const Element& a, const Element& b) {
    if (a.chart()->field() != b.chart()->field()) throw FieldMismatch("elements over different fields");
    if (a.chart() != b.chart() && a.chart()->name != b.chart()->name)
        throw ChartMismatch("elements of charts '" + a.chart()->name + "' and '" + b.chart()->name + "'");
    if (a.tag() != b.tag()) throw IllegalTag("elements of different rings " + tag_name(a.tag()) + ", " + tag_name(b.tag()));
}

Element Element::operator-() const { return Element(chart_, tag_, -value_); }

Element operator+(const Element& a, const Element& b) {
    require_compatible(a, b);
    return Element(a.chart_, a.tag_, a.value_ + b.value_);
}

Element operator-(const Element& a, const Element& b) {
    require_compatible(a, b);
    return Element(a.chart_, a.tag_, a.value_ - b.value_);
}

Element operator*(const Element& a, const Element& b) {
    require_compatible(a, b);
    return Element(a.chart_, a.tag_, a.value_ * b.value_);
}

bool operator==(const Element& a, const Element& b) {
    return a.chart_->name == b.chart_->name && a.tag_ == b.tag_ && a.value_ == b.value_;
}

namespace {

bool arrow_legal(RingTag from, RingTag to) {
    if (from == to) return true;
    switch (from) {
        case RingTag::A: return true;
        case RingTag::U: return to == RingTag::W;
        case RingTag::XHAT: return to == RingTag::W;
        case RingTag::W: return false;
    }
    return false;
}

}  // namespace

Element embed(const Element& e, RingTag to, int prec) {
    if (!arrow_legal(e.tag(), to))
        throw IllegalArrow("no canonical map " + tag_name(e.tag()) + " -> " + tag_name(to));
    TLaurent v = e.value();
    if (tag_is_truncated(to) && v.is_exact()) v = v.truncated(prec);
    return Element(e.chart(), to, std::move(v));
}

bool is_unit_value(RingTag tag, const TLaurent& v) {
    if (v.is_zero()) return false;
    const VarSpace& sp = v.space();
    switch (tag) {
        case RingTag::A:
            return v.is_exact() && v.order() == 0 && v.high() == 1 && v.lowest_coeff().is_unit_in(sp);
        case RingTag::U:
            return v.is_exact() && v.high() == v.order() + 1 && v.lowest_coeff().is_unit_in(sp);
        case RingTag::XHAT:
            return v.order() == 0 && v.lowest_coeff().is_unit_in(sp);
        case RingTag::W:
            return v.lowest_coeff().is_unit_in(sp);
    }
    return false;
}

bool is_unit(const Element& e) { return is_unit_value(e.tag(), e.value()); }

TLaurent unit_inverse(const TLaurent& a, int relative_prec) {
    if (a.is_exact() && is_monomial_unit(a)) return laurent_inv(a, kExact);
    if (a.is_exact() && relative_prec == kExact) throw InsufficientPrecision("series inverse needs a precision");
    return laurent_inv(a, relative_prec);
}

Element ring_inv(const Element& e, int relative_prec) {
    if (!is_unit(e)) throw NotAUnit(render(e.value()) + " is not a unit of the " + tag_name(e.tag()) + " ring");
    if (!tag_is_truncated(e.tag())) return Element(e.chart(), e.tag(), laurent_inv(e.value(), kExact));
    return Element(e.chart(), e.tag(), unit_inverse(e.value(), relative_prec));
}

Element chart_hom(const Element& e, const Substitution& sigma, ChartPtr target) {
    if (!tag_is_truncated(e.tag()))
        throw IllegalTag("overlap maps act on XHAT and W elements, not " + tag_name(e.tag()));
    TLaurent image = sigma.apply(e.value());
    return Element(std::move(target), e.tag(), std::move(image));
}

std::string serialize(const Element& e) { return tag_name(e.tag()) + ":" + e.chart()->name + ":" + render(e.value()); }

Element parse_tagged(const std::string& text, const std::function<ChartPtr(const std::string&)>& lookup) {
    auto c1 = text.find(':');
    if (c1 == std::string::npos) throw ParseError("expected TAG:chart:element", 0);
    auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ParseError("expected TAG:chart:element", c1 + 1);
    RingTag tag = parse_tag(text.substr(0, c1));
    std::string name = text.substr(c1 + 1, c2 - c1 - 1);
    ChartPtr chart = lookup(name);
    if (!chart) throw ParseError("unknown chart '" + name + "'", c1 + 1);
    try {
        return Element(chart, tag, parse_element(std::string_view(text).substr(c2 + 1), chart->space));
    } catch (const ParseError& err) {
        throw ParseError(err.message(), c2 + 1 + err.position());
    }
}

}  // namespace tubular
