#include "tubular/box.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "tubular/error.hpp"

namespace tubular {

Box::Box(int lo, int hi, int yd) : t_low(lo), t_high(hi), y_deg(yd) {
    if (lo >= hi) throw Error("box needs t_low < t_high");
    if (yd < 0) throw Error("box y-degree bound must be nonnegative");
}

Box Box::nonnegative() const {
    Box b = *this;
    b.t_low = std::max(0, t_low);
    if (b.t_high < b.t_low) b.t_high = b.t_low;
    return b;
}

Box parse_box(const std::string& text) {
    std::vector<long> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        char* end = nullptr;
        long v = std::strtol(item.c_str(), &end, 10);
        if (item.empty() || *end != '\0') throw Error("bad box '" + text + "', expected tmin:tmax:ydeg");
        parts.push_back(v);
    }
    if (parts.size() != 3) throw Error("bad box '" + text + "', expected tmin:tmax:ydeg");
    return Box(static_cast<int>(parts[0]), static_cast<int>(parts[1]), static_cast<int>(parts[2]));
}

std::string render_box(const Box& b) {
    return std::to_string(b.t_low) + ":" + std::to_string(b.t_high) + ":" + std::to_string(b.y_deg);
}

namespace {

void enumerate(const VarSpace& space, std::size_t i, int budget, Monomial& cur, std::vector<Monomial>& out) {
    if (i == space.nvars()) {
        out.push_back(cur);
        return;
    }
    int lo = space.invertible[i] ? -budget : 0;
    for (int e = lo; e <= budget; ++e) {
        cur.exp[i] = e;
        enumerate(space, i + 1, budget - std::abs(e), cur, out);
    }
    cur.exp[i] = 0;
}

}  // namespace

std::vector<Monomial> box_monomials(const VarSpace& space, int y_deg) {
    std::vector<Monomial> out;
    Monomial cur(space.nvars());
    enumerate(space, 0, y_deg, cur, out);
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

std::vector<std::pair<int, Monomial>> box_slots(const VarSpace& space, const Box& box) {
    std::vector<std::pair<int, Monomial>> slots;
    auto monos = box_monomials(space, box.y_deg);
    if (!space.has_t()) {
        for (const auto& m : monos) slots.emplace_back(0, m);
        return slots;
    }
    for (int d = box.t_low; d < box.t_high; ++d)
        for (const auto& m : monos) slots.emplace_back(d, m);
    return slots;
}

std::size_t box_dimension(const VarSpace& space, const Box& box) { return box_slots(space, box).size(); }

std::vector<Scalar> box_vectorize(const TLaurent& a, const Box& box, bool clip) {
    const VarSpace& space = a.space();
    auto monos = box_monomials(space, box.y_deg);
    std::map<Monomial, std::size_t, GrlexLess> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);

    int lo = space.has_t() ? box.t_low : 0;
    int hi = space.has_t() ? box.t_high : 1;
    std::vector<Scalar> v(static_cast<std::size_t>(hi - lo) * monos.size(), Scalar::zero(space.field));
    if (!clip && a.prec() < hi) throw TruncationLoss("element precision is below the top of the box");
    for (int d = a.order(); !a.is_zero() && d < a.high(); ++d) {
        for (const auto& term : a.coeff(d).terms()) {
            auto it = index.find(term.mono);
            if (d < lo || d >= hi || it == index.end()) {
                if (clip) continue;
                throw TruncationLoss("element has support outside the box");
            }
            v[static_cast<std::size_t>(d - lo) * monos.size() + it->second] = term.coef;
        }
    }
    return v;
}

TLaurent box_unvectorize(const SpacePtr& space, const Box& box, const std::vector<Scalar>& coords, int prec) {
    auto slots = box_slots(*space, box);
    if (coords.size() != slots.size()) throw Error("coordinate vector does not match the box dimension");
    std::map<int, std::vector<MultiPoly::Term>> by_degree;
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (!coords[i].is_zero()) by_degree[slots[i].first].push_back({slots[i].second, coords[i]});
    if (by_degree.empty()) return TLaurent::zero(space, prec);
    int lo = by_degree.begin()->first;
    int hi = by_degree.rbegin()->first + 1;
    std::vector<MultiPoly> cs(static_cast<std::size_t>(hi - lo));
    for (auto& [d, ts] : by_degree) cs[static_cast<std::size_t>(d - lo)] = MultiPoly::from_terms(std::move(ts));
    return TLaurent::from_coeffs(space, lo, std::move(cs), prec);
}

}  // namespace tubular
