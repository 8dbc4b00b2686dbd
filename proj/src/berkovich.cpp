#include "tubular/berkovich.hpp"

#include <algorithm>
#include <cctype>

#include "tubular/error.hpp"
#include "tubular/parse.hpp"

namespace tubular {

SemivalPoint SemivalPoint::monomial(std::map<std::string, mpq_class> radii) {
    SemivalPoint p;
    p.mode = Mode::Monomial;
    p.radii = std::move(radii);
    return p;
}

SemivalPoint SemivalPoint::evaluation(std::map<std::string, Scalar> values, mpq_class rho) {
    SemivalPoint p;
    p.mode = Mode::Eval;
    p.values = std::move(values);
    p.rho = std::move(rho);
    return p;
}

std::string region_name(RegionLabel r) {
    switch (r) {
        case RegionLabel::U_ETA: return "U_ETA";
        case RegionLabel::Z_ETA: return "Z_ETA";
        case RegionLabel::W: return "W";
    }
    return "?";
}

std::string render_rational(const mpq_class& q) { return q.get_str(); }

namespace {

bool in_unit_interval(const mpq_class& q) { return q >= 0 && q <= 1; }

mpq_class qpow(const mpq_class& base, long e) {
    mpq_class r = 1;
    for (long k = 0; k < e; ++k) r *= base;
    return r;
}

bool known_name(const VarSpace& sp, const std::string& name) { return name == sp.t_name || sp.index_of(name); }

void require_polynomial(const TLaurent& f) {
    if (!f.is_exact()) throw Error("semivaluations are evaluated on exact polynomials");
    if (!f.is_polynomial_in_t()) throw Error("negative power of t outside the A-ring");
    for (const auto& c : f.coeffs())
        for (const auto& term : c.terms())
            for (int e : term.mono.exp)
                if (e < 0) throw Error("negative power of a coordinate outside the A-ring");
}

mpq_class radius(const SemivalPoint& p, const std::string& name) {
    auto it = p.radii.find(name);
    return it == p.radii.end() ? mpq_class(1) : it->second;
}

}  // namespace

void validate_point(const SemivalPoint& p, const VarSpace& space) {
    if (p.mode == SemivalPoint::Mode::Monomial) {
        for (const auto& [name, r] : p.radii) {
            if (!known_name(space, name)) throw Error("point names unknown variable '" + name + "'");
            if (!in_unit_interval(r)) throw Error("radius of '" + name + "' must lie in [0,1]");
        }
        return;
    }
    if (!in_unit_interval(p.rho)) throw Error("rho must lie in [0,1]");
    for (const auto& [name, v] : p.values) {
        if (!space.index_of(name)) throw Error("point names unknown coordinate '" + name + "'");
        if (v.field() != space.field) throw FieldMismatch("point value over another field");
    }
    for (const auto& name : space.y_names)
        if (!p.values.count(name)) throw Error("evaluation point lacks a value for '" + name + "'");
}

mpq_class sval_eval(const SemivalPoint& p, const TLaurent& f) {
    require_polynomial(f);
    if (f.is_zero()) return 0;
    const VarSpace& sp = f.space();
    if (p.mode == SemivalPoint::Mode::Monomial) {
        mpq_class rt = radius(p, sp.t_name);
        std::vector<mpq_class> ry;
        for (const auto& n : sp.y_names) ry.push_back(radius(p, n));
        mpq_class best = 0;
        for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
            if (f.coeffs()[k].is_zero()) continue;
            mpq_class tpart = qpow(rt, f.order() + static_cast<long>(k));
            for (const auto& term : f.coeffs()[k].terms()) {
                mpq_class v = tpart;
                for (std::size_t i = 0; i < ry.size(); ++i) v *= qpow(ry[i], term.mono.exp[i]);
                if (v > best) best = v;
            }
        }
        return best;
    }
    // Evaluate the y's; the first t-degree whose coefficient survives is the order.
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        Scalar acc = Scalar::zero(sp.field);
        for (const auto& term : f.coeffs()[k].terms()) {
            Scalar v = term.coef;
            for (std::size_t i = 0; i < sp.nvars(); ++i) {
                auto it = p.values.find(sp.y_names[i]);
                if (it == p.values.end()) throw Error("evaluation point lacks a value for '" + sp.y_names[i] + "'");
                v *= it->second.pow(term.mono.exp[i]);
            }
            acc += v;
        }
        if (!acc.is_zero()) return qpow(p.rho, f.order() + static_cast<long>(k));
    }
    return 0;
}

RegionLabel classify_region(const SemivalPoint& p, const std::vector<TLaurent>& gens) {
    if (gens.empty()) throw Error("region classification needs at least one generator");
    mpq_class m = 0;
    for (const auto& f : gens) m = std::max(m, sval_eval(p, f));
    if (m == 1) return RegionLabel::U_ETA;
    if (m == 0) return RegionLabel::Z_ETA;
    return RegionLabel::W;
}

mpq_class fiber_coord(const SemivalPoint& p, const std::vector<TLaurent>& gens) {
    RegionLabel r = classify_region(p, gens);
    if (r != RegionLabel::W) throw NotInW("point lies in " + region_name(r) + ", not in W");
    mpq_class m = 0;
    for (const auto& f : gens) m = std::max(m, sval_eval(p, f));
    return m;
}

SemivalPoint power_point(const SemivalPoint& p, int s) {
    if (s < 1) throw Error("power exponent must be a positive integer");
    SemivalPoint q = p;
    for (auto& [name, r] : q.radii) r = qpow(r, s);
    q.rho = qpow(p.rho, s);
    return q;
}

std::size_t chart_select(const SemivalPoint& p, const std::vector<TLaurent>& gens) {
    RegionLabel r = classify_region(p, gens);
    if (r != RegionLabel::W) throw NotInW("point lies in " + region_name(r) + ", not in W");
    std::size_t best = 0;
    mpq_class best_v = -1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        mpq_class v = sval_eval(p, gens[i]);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    return best;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

mpq_class parse_rational(const std::string& text) {
    std::string s = trim(text);
    auto ok = [](const std::string& part) {
        std::size_t i = (!part.empty() && part[0] == '-') ? 1 : 0;
        if (i >= part.size()) return false;
        return std::all_of(part.begin() + static_cast<long>(i), part.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!ok(num) || !ok(den) || den[0] == '-') throw ParseError("bad rational '" + s + "'", 0);
    mpz_class d{den};
    if (d == 0) throw ParseError("zero denominator in '" + s + "'", 0);
    mpq_class q{mpz_class{num}, d};
    q.canonicalize();
    return q;
}

}  // namespace

SemivalPoint parse_point(const std::string& text, const VarSpace& space) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("point literal needs 'mono:' or 'eval:'", 0);
    std::string kind = trim(text.substr(0, colon));
    std::string body = text.substr(colon + 1);
    SemivalPoint p;
    if (kind == "mono") {
        p.mode = SemivalPoint::Mode::Monomial;
    } else if (kind == "eval") {
        p.mode = SemivalPoint::Mode::Eval;
    } else {
        throw ParseError("unknown point kind '" + kind + "'", 0);
    }
    std::string flat = body;
    std::replace(flat.begin(), flat.end(), ';', ',');
    for (const auto& item : split(flat, ',')) {
        std::string it = trim(item);
        if (it.empty()) continue;
        auto eq = it.find('=');
        if (eq == std::string::npos) throw ParseError("expected name=value in '" + it + "'", 0);
        std::string name = trim(it.substr(0, eq));
        mpq_class value = parse_rational(it.substr(eq + 1));
        if (p.mode == SemivalPoint::Mode::Monomial) {
            if (p.radii.count(name)) throw ParseError("radius of '" + name + "' given twice", 0);
            p.radii[name] = value;
        } else if (name == "rho") {
            p.rho = value;
        } else {
            if (p.values.count(name)) throw ParseError("value of '" + name + "' given twice", 0);
            p.values.emplace(name, Scalar(space.field, value));
        }
    }
    validate_point(p, space);
    return p;
}

std::string render_point(const SemivalPoint& p) {
    std::string out;
    if (p.mode == SemivalPoint::Mode::Monomial) {
        out = "mono:";
        bool first = true;
        for (const auto& [name, r] : p.radii) {
            out += (first ? " " : ", ") + name + "=" + render_rational(r);
            first = false;
        }
        return out;
    }
    out = "eval:";
    bool first = true;
    for (const auto& [name, v] : p.values) {
        out += (first ? " " : ", ") + name + "=" + v.str();
        first = false;
    }
    out += std::string(first ? " " : "; ") + "rho=" + render_rational(p.rho);
    return out;
}

std::vector<TLaurent> parse_generators(const std::string& text, const SpacePtr& space) {
    std::vector<TLaurent> out;
    for (const auto& part : split(text, ',')) {
        TLaurent f = parse_element(part, space);
        require_polynomial(f);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace tubular
