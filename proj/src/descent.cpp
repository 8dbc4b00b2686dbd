#include "tubular/descent.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tubular/error.hpp"
#include "tubular/linalg.hpp"
#include "tubular/parse.hpp"

namespace tubular {

std::string overlap_chart_name(const std::string& from, const std::string& to) { return from + "~" + to; }

std::size_t Cover::add_chart(ChartPtr chart) {
    if (chart->field() != field_) throw FieldMismatch("chart '" + chart->name + "' is over another field");
    if (index_of(chart->name)) throw Error("duplicate chart '" + chart->name + "'");
    charts_.push_back(std::move(chart));
    if (interior_) interior_->maps.emplace_back();
    return charts_.size() - 1;
}

void Cover::add_overlap(std::size_t from, std::size_t to, const std::vector<std::string>& invertible,
                        MonomialImage t_image, std::vector<MonomialImage> y_images) {
    if (from >= charts_.size() || to >= charts_.size()) throw MissingData("overlap refers to an unknown chart");
    if (from == to) throw Error("an overlap of a chart with itself is the identity and is not declared");
    if (overlaps_.count({from, to})) throw Error("overlap declared twice");
    const ChartPtr& target = charts_[to];
    for (const auto& name : invertible)
        if (!target->space->index_of(name))
            throw MissingData("overlap inverts unknown variable '" + name + "' of chart '" + target->name + "'");
    auto space = std::make_shared<const VarSpace>(target->space->widened(invertible));
    ChartPtr ring = make_chart(overlap_chart_name(charts_[from]->name, target->name), space);
    Substitution sigma(charts_[from]->space, space, std::move(t_image), std::move(y_images));
    overlaps_.emplace(std::make_pair(from, to), Overlap{from, to, std::move(ring), std::move(sigma)});
}

void Cover::add_triple(std::size_t i, std::size_t j, std::size_t k) {
    for (auto [a, b] : {std::pair{i, j}, std::pair{j, k}, std::pair{i, k}})
        if (!overlap(a, b)) throw MissingData("triple needs the overlap " + std::to_string(a) + " -> " + std::to_string(b));
    triples_.push_back({i, j, k});
}

void Cover::set_interior(std::string name, SpacePtr space) {
    if (space->has_t()) throw Error("the interior patch has no t variable");
    if (space->field != field_) throw FieldMismatch("interior patch over another field");
    interior_ = InteriorPatch{std::move(name), std::move(space), std::vector<std::optional<Substitution>>(charts_.size())};
}

void Cover::add_interior_map(std::size_t chart, MonomialImage t_image, std::vector<MonomialImage> y_images) {
    if (!interior_) throw MissingData("no interior patch declared");
    if (chart >= charts_.size()) throw MissingData("interior map for an unknown chart");
    // Chart functions become functions on the interior after inverting its
    // coordinates; sections are those whose images avoid the inverses.
    auto localized = std::make_shared<const VarSpace>(interior_->space->fully_localized());
    interior_->maps[chart] =
        Substitution::into_interior(charts_[chart]->space, localized, std::move(t_image), std::move(y_images));
}

std::optional<std::size_t> Cover::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < charts_.size(); ++i)
        if (charts_[i]->name == name) return i;
    return std::nullopt;
}

ChartPtr Cover::find_chart(const std::string& name) const {
    if (auto i = index_of(name)) return charts_[*i];
    for (const auto& [key, ov] : overlaps_)
        if (ov.chart->name == name) return ov.chart;
    return nullptr;
}

const Overlap* Cover::overlap(std::size_t i, std::size_t j) const {
    auto it = overlaps_.find({i, j});
    return it == overlaps_.end() ? nullptr : &it->second;
}

const Overlap& Cover::require_overlap(std::size_t i, std::size_t j) const {
    const Overlap* ov = overlap(i, j);
    if (!ov) throw MissingData("no overlap " + charts_.at(i)->name + " -> " + charts_.at(j)->name);
    return *ov;
}

// ---------------------------------------------------------------- cocycles

namespace {

std::string name_of(const Cover& c, std::size_t i) { return c.chart(i)->name; }

const RMatrix* find_g(const BundleDatum& d, std::size_t i, std::size_t j) {
    auto it = d.cocycle.find({i, j});
    return it == d.cocycle.end() ? nullptr : &it->second;
}

Grid apply_grid(const Substitution& s, const Grid& g) {
    Grid out;
    for (const auto& row : g) {
        std::vector<TLaurent> r;
        for (const auto& e : row) r.push_back(s.apply(e));
        out.push_back(std::move(r));
    }
    return out;
}

Grid respace(const Grid& g, const SpacePtr& sp) {
    Grid out = g;
    for (auto& row : out)
        for (auto& e : row) e = e.with_space(sp);
    return out;
}

bool same_images(const Substitution& a, const Substitution& b) {
    return a.t_image() == b.t_image() && a.y_images() == b.y_images();
}

void record(CocycleReport& rep, std::string identity, std::vector<std::string> charts,
            const std::optional<EntryMismatch>& mm) {
    std::string line = identity + " [";
    for (std::size_t k = 0; k < charts.size(); ++k) line += (k ? "," : "") + charts[k];
    line += "]";
    rep.checked.push_back(line);
    if (!mm) return;
    // Long differences are cut after a few t-degrees.
    const TLaurent& d = mm->difference;
    std::string diff = render(d.high() - d.order() > 4 ? d.truncated(d.order() + 4) : d);
    rep.failures.push_back({std::move(identity), std::move(charts), mm->row, mm->col, std::move(diff)});
}

}  // namespace

CocycleReport cocycle_check(const Cover& cover, const BundleDatum& datum) {
    if (datum.mode != BundleDatum::Mode::Cocycle) throw MissingData("cocycle check needs cocycle-mode bundle data");
    CocycleReport rep;
    for (const auto& [key, g] : datum.cocycle) {
        auto [i, j] = key;
        if (i >= cover.chart_count() || j >= cover.chart_count()) throw MissingData("transition for an unknown chart");
        if (i != j && !cover.overlap(i, j))
            throw MissingData("transition g for " + name_of(cover, i) + " -> " + name_of(cover, j) + " has no overlap");
        if (g.rank() != datum.rank) throw Error("transition matrix rank differs from the bundle rank");
        if (!gl_check(g))
            rep.failures.push_back({"g_ij invertible over W", {name_of(cover, i), name_of(cover, j)}, 0, 0,
                                    "determinant " + render(grid_det(g.entries())) + " is not a W-unit"});
    }
    for (const auto& [key, ov] : cover.overlaps())
        if (!find_g(datum, key.first, key.second))
            throw MissingData("no transition matrix for the overlap " + name_of(cover, key.first) + " -> " +
                              name_of(cover, key.second));
    if (!rep.ok()) return rep;

    for (std::size_t i = 0; i < cover.chart_count(); ++i) {
        const RMatrix* g = find_g(datum, i, i);
        if (!g) continue;
        record(rep, "g_ii = I", {name_of(cover, i)}, grid_mismatch(g->entries(), grid_identity(g->space(), datum.rank)));
    }

    for (const auto& [key, g_ij] : datum.cocycle) {
        auto [i, j] = key;
        if (i >= j) continue;
        const RMatrix* g_ji = find_g(datum, j, i);
        if (!g_ji) throw MissingData("missing transition " + name_of(cover, j) + " -> " + name_of(cover, i));
        const Overlap& ij = cover.require_overlap(i, j);
        const Overlap& ji = cover.require_overlap(j, i);
        std::vector<std::string> names{name_of(cover, i), name_of(cover, j)};
        try {
            Substitution s = ji.sigma.rebased(ij.chart->space, ji.chart->space);
            RMatrix moved(ji.chart, RingTag::W, apply_grid(s, g_ij.entries()));
            RMatrix inv = mat_inv(moved, 4 * kDefaultPrecision);
            record(rep, "g_ji = sigma_ji(g_ij)^-1", names, grid_mismatch(g_ji->entries(), inv.entries()));
        } catch (const Error& e) {
            rep.checked.push_back("g_ji = sigma_ji(g_ij)^-1 [" + names[0] + "," + names[1] + "]");
            rep.failures.push_back({"g_ji = sigma_ji(g_ij)^-1", names, 0, 0, e.what()});
        }
    }

    for (const auto& tr : cover.triples()) {
        auto [i, j, k] = tr;
        std::vector<std::string> names{name_of(cover, i), name_of(cover, j), name_of(cover, k)};
        const Overlap& ij = cover.require_overlap(i, j);
        const Overlap& jk = cover.require_overlap(j, k);
        const Overlap& ik = cover.require_overlap(i, k);
        auto full = std::make_shared<const VarSpace>(cover.chart(k)->space->fully_localized());
        Substitution s_jk = jk.sigma.rebased(ij.chart->space, full);
        Substitution via_j = s_jk.compose_after(ij.sigma);
        Substitution direct = ik.sigma.rebased(cover.chart(i)->space, full);
        rep.checked.push_back("sigma_jk o sigma_ij = sigma_ik [" + names[0] + "," + names[1] + "," + names[2] + "]");
        if (!same_images(via_j, direct))
            rep.failures.push_back({"sigma_jk o sigma_ij = sigma_ik", names, 0, 0, "overlap maps do not compose"});

        const RMatrix* g_ij = find_g(datum, i, j);
        const RMatrix* g_jk = find_g(datum, j, k);
        const RMatrix* g_ik = find_g(datum, i, k);
        if (!g_ij || !g_jk || !g_ik) throw MissingData("triple " + names[0] + "," + names[1] + "," + names[2] +
                                                       " lacks a transition matrix");
        Grid rhs = grid_mul(respace(g_jk->entries(), full), apply_grid(s_jk, g_ij->entries()));
        record(rep, "g_ik = g_jk * sigma_jk(g_ij)", names, grid_mismatch(respace(g_ik->entries(), full), rhs));
    }
    return rep;
}

// ---------------------------------------------------------------- forward images

ForwardImages forward_images(const RMatrix& p, int prec) {
    if (p.tag() != RingTag::A) throw IllegalTag("forward images start from a matrix over A");
    RMatrix u = mat_embed(p, RingTag::U, prec);
    RMatrix xhat = mat_embed(p, RingTag::XHAT, prec);
    RMatrix wu = mat_embed(u, RingTag::W, prec);
    RMatrix wx = mat_embed(xhat, RingTag::W, prec);
    bool ok = !grid_mismatch(wu.entries(), wx.entries()) && wu == wx;
    return {std::move(u), std::move(xhat), std::move(wu), std::move(wx), ok};
}

// ---------------------------------------------------------------- gluing

std::string kind_name(GlueClassification::Kind k) {
    switch (k) {
        case GlueClassification::Kind::Free: return "Free";
        case GlueClassification::Kind::Obstructed: return "Obstructed";
        case GlueClassification::Kind::Undecided: return "Undecided";
    }
    return "?";
}

GlueClassification bl_glue_free(const RMatrix& g, USide side) {
    GlueClassification out;
    TwoSidedFactor tf;
    try {
        tf = two_sided_factor(g, side);
    } catch (const Unsupported& e) {
        out.reason = e.what();
        return out;
    }
    if (tf.present()) {
        Grid prod = grid_mul(tf.h_xhat->entries(), tf.h_u->entries());
        if (grid_mismatch(prod, g.entries())) throw std::logic_error("factorization does not reproduce g");
        out.kind = GlueClassification::Kind::Free;
        out.h_xhat = tf.h_xhat;
        out.h_u = tf.h_u;
        return out;
    }
    if (!tf.obstruction.empty()) {
        out.kind = GlueClassification::Kind::Obstructed;
        out.split = tf.obstruction;
    }
    out.reason = tf.reason;
    return out;
}

// ---------------------------------------------------------------- linear systems

namespace {

// Row keys (block, t-degree, monomial) numbered on first use.
class RowIndex {
public:
    std::size_t operator()(std::size_t block, int degree, const Monomial& m) {
        auto key = std::make_tuple(block, degree, m.exp);
        auto [it, inserted] = ids_.emplace(std::move(key), ids_.size());
        return it->second;
    }

private:
    std::map<std::tuple<std::size_t, int, std::vector<int>>, std::size_t> ids_;
};

}  // namespace

FiberBasis fiber_product_sections(const RMatrix& g, const Box& box) {
    if (g.tag() != RingTag::W) throw IllegalTag("fiber product sections take a matrix over W");
    if (!gl_check(g)) throw NotInvertible("g is not in GL_r over W");
    const SpacePtr& sp = g.space();
    std::size_t r = g.rank();
    auto slots = box_slots(*sp, box);
    std::size_t ns = slots.size();
    Field f = sp->field;

    SparseSystem sys(f, r * ns);
    RowIndex rows;
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t s = 0; s < ns; ++s) {
            const auto& [d, m] = slots[s];
            for (std::size_t i = 0; i < r; ++i) {
                TLaurent e = g.at(i, c).shifted(d).times_monomial(m);
                if (e.prec() < 0)
                    throw InsufficientPrecision("g * u is unknown below t^0 for u = t^" + std::to_string(d) +
                                                "; raise the precision of g");
                for (int deg = e.order(); !e.is_zero() && deg < std::min(0, e.high()); ++deg)
                    for (const auto& term : e.coeff(deg).terms())
                        sys.add(rows(i, deg, term.mono), c * ns + s, term.coef);
            }
        }
    FiberBasis out{box, r, {}};
    for (const auto& v : sys.kernel()) {
        FiberSection sec;
        for (std::size_t c = 0; c < r; ++c)
            sec.u.push_back(box_unvectorize(sp, box, std::vector<Scalar>(v.begin() + static_cast<long>(c * ns),
                                                                         v.begin() + static_cast<long>((c + 1) * ns))));
        for (std::size_t i = 0; i < r; ++i) {
            TLaurent acc(sp);
            for (std::size_t c = 0; c < r; ++c) acc += g.at(i, c) * sec.u[c];
            sec.v.push_back(std::move(acc));
        }
        out.sections.push_back(std::move(sec));
    }
    return out;
}

namespace {

bool box_is_empty_for(RingTag tag, const Box& box) { return tag == RingTag::XHAT && box.t_high <= 0; }

Box chart_box(RingTag tag, const Box& box) { return tag == RingTag::XHAT ? box.nonnegative() : box; }

// Degrees below this are compared on overlap o (truncated rings only).
int compare_limit(const Overlap& ov, const Box& box) { return std::min(box.t_high, ov.sigma.image_prec(box.t_high)); }

void require_tag(RingTag tag) {
    if (tag == RingTag::A) throw IllegalTag("global sections are computed for U, XHAT and W");
}

}  // namespace

SectionBasis global_sections(const Cover& cover, RingTag tag, const Box& box) {
    require_tag(tag);
    SectionBasis out{tag, box, {}};
    if (box_is_empty_for(tag, box) || cover.chart_count() == 0) return out;
    Box cb = chart_box(tag, box);
    bool truncated = tag_is_truncated(tag);

    std::size_t nc = cover.chart_count();
    std::vector<std::vector<std::pair<int, Monomial>>> slots(nc);
    std::vector<std::size_t> offset(nc + 1, 0);
    std::vector<std::map<std::pair<int, std::vector<int>>, std::size_t>> slot_index(nc);
    for (std::size_t i = 0; i < nc; ++i) {
        slots[i] = box_slots(*cover.chart(i)->space, cb);
        offset[i + 1] = offset[i] + slots[i].size();
        for (std::size_t s = 0; s < slots[i].size(); ++s) slot_index[i][{slots[i][s].first, slots[i][s].second.exp}] = s;
    }

    // Interior unknowns: one per legal interior monomial hit by a chart slot.
    bool use_interior = tag == RingTag::U && cover.interior().has_value();
    std::map<std::vector<int>, std::size_t> interior_vars;
    std::size_t nvars = offset[nc];
    if (use_interior) {
        const auto& ip = *cover.interior();
        for (std::size_t i = 0; i < nc; ++i) {
            if (!ip.maps[i]) continue;
            for (const auto& [d, m] : slots[i]) {
                MonomialImage im = ip.maps[i]->apply_term(d, m);
                if (im.mono.legal_in(*ip.space) && !interior_vars.count(im.mono.exp))
                    interior_vars.emplace(im.mono.exp, 0);
            }
        }
        for (auto& [exp, idx] : interior_vars) idx = nvars++;
    }

    SparseSystem sys(cover.field(), nvars);
    RowIndex rows;
    std::size_t block = 0;
    for (const auto& [key, ov] : cover.overlaps()) {
        auto [i, j] = key;
        int limit = truncated ? compare_limit(ov, cb) : kExact;
        for (std::size_t s = 0; s < slots[i].size(); ++s) {
            const auto& [d, m] = slots[i][s];
            MonomialImage im = ov.sigma.apply_term(d, m);
            if (im.t_degree >= limit) continue;
            sys.add(rows(block, im.t_degree, im.mono), offset[i] + s, im.coef);
        }
        for (std::size_t s = 0; s < slots[j].size(); ++s) {
            const auto& [d, m] = slots[j][s];
            if (d >= limit) continue;
            sys.add(rows(block, d, m), offset[j] + s, -Scalar::one(cover.field()));
        }
        ++block;
    }
    if (use_interior) {
        const auto& ip = *cover.interior();
        for (std::size_t i = 0; i < nc; ++i, ++block) {
            if (!ip.maps[i]) continue;
            for (std::size_t s = 0; s < slots[i].size(); ++s) {
                const auto& [d, m] = slots[i][s];
                MonomialImage im = ip.maps[i]->apply_term(d, m);
                sys.add(rows(block, 0, im.mono), offset[i] + s, im.coef);
            }
            for (const auto& [exp, idx] : interior_vars) sys.add(rows(block, 0, Monomial(exp)), idx, -Scalar::one(cover.field()));
        }
    }

    int prec = truncated ? cb.t_high : kExact;
    for (const auto& v : sys.kernel()) {
        std::vector<TLaurent> comps;
        for (std::size_t i = 0; i < nc; ++i)
            comps.push_back(box_unvectorize(cover.chart(i)->space, cb,
                                            std::vector<Scalar>(v.begin() + static_cast<long>(offset[i]),
                                                                v.begin() + static_cast<long>(offset[i + 1])),
                                            prec));
        out.vectors.push_back(std::move(comps));
    }
    return out;
}

bool is_global_section(const Cover& cover, RingTag tag, const Box& box, const std::vector<TLaurent>& comps) {
    require_tag(tag);
    if (comps.size() != cover.chart_count()) throw Error("section needs one component per chart");
    if (box_is_empty_for(tag, box)) return std::all_of(comps.begin(), comps.end(), [](const TLaurent& a) { return a.is_zero(); });
    Box cb = chart_box(tag, box);
    bool truncated = tag_is_truncated(tag);
    try {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (!tag_admits(tag, comps[i])) return false;
            box_vectorize(comps[i].with_space(cover.chart(i)->space), cb);
        }
        for (const auto& [key, ov] : cover.overlaps()) {
            auto [i, j] = key;
            TLaurent lhs = ov.sigma.apply(comps[i].as_exact());
            TLaurent rhs = comps[j].as_exact().with_space(ov.chart->space);
            if (truncated) {
                int limit = compare_limit(ov, cb);
                lhs = lhs.truncated(limit);
                rhs = rhs.truncated(limit);
            }
            if (compare(lhs, rhs) == Comparison::Different) return false;
        }
        if (tag == RingTag::U && cover.interior()) {
            std::optional<TLaurent> seen;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                const auto& map = cover.interior()->maps[i];
                if (!map) continue;
                TLaurent im = map->apply(comps[i]);
                for (const auto& c : im.coeffs())
                    if (!c.legal_in(*cover.interior()->space)) return false;
                im = im.with_space(cover.interior()->space);
                if (seen && compare(*seen, im) != Comparison::Equal) return false;
                seen = im;
            }
        }
    } catch (const TruncationLoss&) {
        return false;
    } catch (const FlagViolation&) {
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- units

std::vector<int> unit_signature(const TLaurent& a) {
    if (a.is_zero()) throw NotAUnit("zero has no signature");
    std::vector<int> sig{a.order()};
    const auto& m = a.lowest_coeff().terms().front().mono;
    sig.insert(sig.end(), m.exp.begin(), m.exp.end());
    return sig;
}

namespace {

bool is_constant_section(const std::vector<TLaurent>& comps) {
    return std::all_of(comps.begin(), comps.end(), [](const TLaurent& a) {
        return !a.is_zero() && a.order() == 0 && a.high() == 1 && a.lowest_coeff().is_constant();
    });
}

// Reciprocal of a box element inside its ring, cut at the top of the box.
std::optional<TLaurent> boxed_reciprocal(RingTag tag, const TLaurent& a, const Box& cb) {
    TLaurent e = a.as_exact();
    if (!is_unit_value(tag_is_truncated(tag) ? tag : RingTag::U, e)) return std::nullopt;
    if (is_monomial_unit(e)) {
        TLaurent inv = laurent_inv(e, kExact);
        return tag_is_truncated(tag) ? inv.truncated(cb.t_high) : inv;
    }
    if (!tag_is_truncated(tag)) return std::nullopt;
    long rel = static_cast<long>(cb.t_high) + e.order();
    if (rel <= 0) return std::nullopt;
    return laurent_inv(e, static_cast<int>(rel));
}

}  // namespace

UnitGroup global_units(const Cover& cover, const Box& box, RingTag tag) {
    UnitGroup out;
    out.tag = tag;
    SectionBasis basis = global_sections(cover, tag, box);
    if (basis.vectors.empty()) return out;
    Box cb = chart_box(tag, box);
    for (const auto& v : basis.vectors) {
        bool units = std::all_of(v.begin(), v.end(), [&](const TLaurent& a) { return is_unit_value(tag, a); });
        if (!units) continue;
        std::vector<TLaurent> rec;
        bool ok = true;
        for (const auto& a : v) {
            auto r = boxed_reciprocal(tag, a, cb);
            if (!r) {
                ok = false;
                break;
            }
            rec.push_back(std::move(*r));
        }
        if (!ok || !is_global_section(cover, tag, box, rec)) continue;
        out.units.push_back(v);
        out.signatures.push_back(unit_signature(v[0]));
        if (!is_constant_section(v)) out.generators.push_back(v);
    }
    return out;
}

namespace {

std::vector<int> diff(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
    return d;
}

IntLattice lattice_of(std::size_t n, const std::vector<std::vector<int>>& gens) {
    IntLattice h(n);
    for (const auto& g : gens) h.add_generator(std::vector<long>(g.begin(), g.end()));
    return h;
}

bool in_lattice(const IntLattice& h, const std::vector<int>& v) { return h.contains(std::vector<long>(v.begin(), v.end())); }

}  // namespace

std::optional<std::size_t> PicKernel::class_of(const std::vector<int>& signature) const {
    if (classes.empty()) return std::nullopt;
    IntLattice h = lattice_of(signature.size(), subgroup_generators);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (const auto& m : classes[c].members)
            if (in_lattice(h, diff(m, signature))) return c;
    return std::nullopt;
}

std::optional<std::size_t> PicKernel::compose(std::size_t a, std::size_t b) const {
    const auto& ra = classes.at(a).representative;
    const auto& rb = classes.at(b).representative;
    std::vector<int> sum(ra.size());
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = ra[k] + rb[k];
    return class_of(sum);
}

PicKernel pic_kernel_classes(const Cover& cover, const Box& box) {
    PicKernel out;
    if (cover.chart_count() == 0) return out;
    UnitGroup w = global_units(cover, box, RingTag::W);
    UnitGroup u = global_units(cover, box, RingTag::U);
    UnitGroup x = global_units(cover, box, RingTag::XHAT);
    out.u_signatures = u.signatures;
    out.xhat_signatures = x.signatures;
    out.subgroup_generators = u.signatures;
    out.subgroup_generators.insert(out.subgroup_generators.end(), x.signatures.begin(), x.signatures.end());

    std::size_t n = 1 + cover.chart(0)->space->nvars();
    IntLattice h = lattice_of(n, out.subgroup_generators);
    std::set<std::vector<int>> sigs(w.signatures.begin(), w.signatures.end());
    for (const auto& s : sigs) {
        bool placed = false;
        for (auto& c : out.classes)
            if (in_lattice(h, diff(s, c.representative))) {
                c.members.push_back(s);
                placed = true;
                break;
            }
        if (!placed) out.classes.push_back({s, {s}});
    }
    return out;
}

}  // namespace tubular
