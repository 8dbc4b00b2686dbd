#include "tubular/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "tubular/berkovich.hpp"
#include "tubular/error.hpp"
#include "tubular/parse.hpp"
#include "tubular/scene.hpp"

namespace tubular {

namespace {

using Record = nlohmann::ordered_json;

struct Options {
    std::string scene;
    std::string field;
    std::string box;
    std::string format = "text";
    std::string chart;
    std::string matrix;
    std::string point;
    std::string gens;
    std::string tag = "W";
    std::string u_side = "chart";
    int prec = 0;
    int power = 1;
};

// A failed check, reported with exit code 1 after the report is printed.
struct Verdict {
    bool ok = true;
};

class Context {
public:
    Context(const Options& o, std::ostream& out) : opt_(o), out_(out) {}

    bool record() const { return opt_.format == "record"; }

    Field field() const { return opt_.field.empty() ? Field::rationals() : parse_field(opt_.field); }

    Scene& scene() {
        if (!scene_) scene_ = load();
        return *scene_;
    }

    Box box() {
        if (!opt_.box.empty()) return parse_box(opt_.box);
        if (scene().box) return *scene().box;
        throw Error("this command needs --box tmin:tmax:ydeg");
    }

    ChartPtr chart() {
        const Cover& c = scene().cover;
        if (opt_.chart.empty()) {
            if (c.chart_count() == 0) throw Error("scene has no charts");
            return c.chart(0);
        }
        ChartPtr ch = c.find_chart(opt_.chart);
        if (!ch) throw MissingData("scene has no chart '" + opt_.chart + "'");
        return ch;
    }

    RMatrix matrix() {
        if (opt_.matrix.empty()) {
            const auto& b = scene().bundle;
            if (b && b->mode == BundleDatum::Mode::Affine) return apply_prec(*b->affine_g);
            throw Error("this command needs --matrix (or a scene with an affine bundle)");
        }
        ChartPtr ch = chart();
        std::string text = opt_.matrix;
        if (text.front() == '@') {
            std::ifstream in(text.substr(1));
            if (!in) throw Error("cannot read matrix file '" + text.substr(1) + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        return apply_prec(RMatrix(ch, RingTag::W, parse_grid(text, ch->space)));
    }

    std::vector<TLaurent> gens() {
        if (opt_.gens.empty()) return {TLaurent::monomial(chart()->space, Scalar::one(field_of_scene()), 1, Monomial(chart()->space->nvars()))};
        return parse_generators(opt_.gens, chart()->space);
    }

    SemivalPoint point() {
        if (opt_.point.empty()) throw Error("this command needs --point");
        return parse_point(opt_.point, *chart()->space);
    }

    std::ostream& out() { return out_; }
    const Options& opt() const { return opt_; }

private:
    Field field_of_scene() { return scene().cover.field(); }

    RMatrix apply_prec(const RMatrix& m) const {
        if (opt_.prec <= 0) return m;
        Grid g = m.entries();
        for (auto& row : g)
            for (auto& e : row) e = e.truncated(std::min(e.prec(), opt_.prec));
        return RMatrix(m.chart(), m.tag(), std::move(g));
    }

    Scene load() const {
        const std::string& s = opt_.scene;
        if (s.empty() || s == "p1" || s == "p2" || s == "p3") return build_projective(s.empty() ? 1 : s[1] - '0', field());
        std::ifstream in(s);
        if (!in) throw Error("cannot read scene file '" + s + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        Scene sc = parse_scene(buf.str());
        if (!opt_.field.empty() && sc.cover.field() != field())
            throw FieldMismatch("scene is over " + sc.cover.field().name() + " but --field asks for " + field().name());
        return sc;
    }

    const Options& opt_;
    std::ostream& out_;
    std::optional<Scene> scene_;
};

void emit(Context& ctx, const Record& rec, const std::string& text) {
    if (ctx.record())
        ctx.out() << rec.dump(2) << "\n";
    else
        ctx.out() << text;
}

Record grid_record(const Grid& g) {
    Record rows = Record::array();
    for (const auto& row : g) {
        Record r = Record::array();
        for (const auto& e : row) r.push_back(render(e));
        rows.push_back(r);
    }
    return rows;
}

std::string grid_text(const std::string& label, const Grid& g) { return label + " = " + render_grid(g) + "\n"; }

Record int_list(const std::vector<int>& v) {
    Record r = Record::array();
    for (int x : v) r.push_back(x);
    return r;
}

std::string int_tuple(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + ")";
}

std::string section_text(const Cover& c, const std::vector<TLaurent>& comps) {
    std::string s;
    for (std::size_t i = 0; i < comps.size(); ++i) s += (i ? "; " : "") + c.chart(i)->name + ": " + render(comps[i]);
    return s;
}

Record section_record(const Cover& c, const std::vector<TLaurent>& comps) {
    Record r = Record::object();
    for (std::size_t i = 0; i < comps.size(); ++i) r[c.chart(i)->name] = render(comps[i]);
    return r;
}

// ---------------------------------------------------------------- commands

Verdict cmd_classify(Context& ctx) {
    SemivalPoint p = ctx.point();
    auto gens = ctx.gens();
    RegionLabel r = classify_region(p, gens);
    Record rec{{"command", "classify"}, {"point", render_point(p)}, {"region", region_name(r)}};
    std::string text = region_name(r);
    if (r == RegionLabel::W) {
        std::string f = render_rational(fiber_coord(p, gens));
        rec["fiber"] = f;
        text += ", fiber " + f;
    }
    emit(ctx, rec, text + "\n");
    return {};
}

Verdict cmd_fiber(Context& ctx) {
    SemivalPoint p = ctx.point();
    std::string f = render_rational(fiber_coord(p, ctx.gens()));
    emit(ctx, Record{{"command", "fiber"}, {"point", render_point(p)}, {"fiber", f}}, "fiber " + f + "\n");
    return {};
}

Verdict cmd_power(Context& ctx) {
    SemivalPoint p = ctx.point();
    SemivalPoint q = power_point(p, ctx.opt().power);
    auto gens = ctx.gens();
    RegionLabel r = classify_region(q, gens);
    Record rec{{"command", "power"}, {"s", ctx.opt().power}, {"point", render_point(q)}, {"region", region_name(r)}};
    std::string text = "point " + render_point(q) + "\n" + region_name(r);
    if (r == RegionLabel::W) {
        std::string f = render_rational(fiber_coord(q, gens));
        rec["fiber"] = f;
        text += ", fiber " + f;
    }
    emit(ctx, rec, text + "\n");
    return {};
}

Verdict cmd_chart_select(Context& ctx) {
    SemivalPoint p = ctx.point();
    auto gens = ctx.gens();
    std::size_t j = chart_select(p, gens);
    std::string v = render_rational(sval_eval(p, gens[j]));
    emit(ctx, Record{{"command", "chart-select"}, {"index", j + 1}, {"value", v}},
         "chart " + std::to_string(j + 1) + " (|f_" + std::to_string(j + 1) + "| = " + v + ")\n");
    return {};
}

Verdict cmd_global_sections(Context& ctx) {
    RingTag tag = parse_tag(ctx.opt().tag);
    Box box = ctx.box();
    const Cover& c = ctx.scene().cover;
    SectionBasis b = global_sections(c, tag, box);
    Record rec{{"command", "global-sections"}, {"tag", tag_name(tag)}, {"box", render_box(box)},
               {"dimension", b.dimension()}};
    Record basis = Record::array();
    std::string text = "global sections over " + tag_name(tag) + " in box " + render_box(box) + ": dimension " +
                       std::to_string(b.dimension()) + "\n";
    for (std::size_t k = 0; k < b.vectors.size(); ++k) {
        basis.push_back(section_record(c, b.vectors[k]));
        text += "[" + std::to_string(k + 1) + "] " + section_text(c, b.vectors[k]) + "\n";
    }
    rec["basis"] = basis;
    emit(ctx, rec, text);
    return {};
}

Verdict cmd_global_units(Context& ctx) {
    RingTag tag = parse_tag(ctx.opt().tag);
    Box box = ctx.box();
    const Cover& c = ctx.scene().cover;
    UnitGroup u = global_units(c, box, tag);
    Record rec{{"command", "global-units"}, {"tag", tag_name(tag)}, {"box", render_box(box)},
               {"boxed_units", u.units.size()}, {"nonconstant", u.generators.size()}};
    Record gens = Record::array();
    std::string text = "units over " + tag_name(tag) + " in box " + render_box(box) + ": " +
                       std::to_string(u.units.size()) + " boxed, " + std::to_string(u.generators.size()) +
                       " non-constant\n";
    if (u.generators.empty()) text += "only constants (k^x)\n";
    for (const auto& g : u.generators) {
        gens.push_back(section_record(c, g));
        text += "  " + section_text(c, g) + "\n";
    }
    rec["generators"] = gens;
    emit(ctx, rec, text);
    return {};
}

std::string signature_text(const Cover& c, const std::vector<int>& sig) {
    auto sp = std::make_shared<const VarSpace>(c.chart(0)->space->fully_localized());
    Monomial m(std::vector<int>(sig.begin() + 1, sig.end()));
    return render(TLaurent::monomial(sp, Scalar::one(c.field()), sig[0], m));
}

Verdict cmd_pic_kernel(Context& ctx) {
    Box box = ctx.box();
    const Cover& c = ctx.scene().cover;
    PicKernel pk = pic_kernel_classes(c, box);
    Record rec{{"command", "pic-kernel"}, {"box", render_box(box)}, {"classes", pk.size()}};
    std::string text = std::to_string(pk.size()) + " class" + (pk.size() == 1 ? "" : "es") + " in box " +
                       render_box(box) + "\n";
    Record classes = Record::array();
    for (std::size_t k = 0; k < pk.classes.size(); ++k) {
        const auto& cl = pk.classes[k];
        Record members = Record::array();
        for (const auto& m : cl.members) members.push_back(signature_text(c, m));
        classes.push_back(Record{{"index", k + 1}, {"representative", signature_text(c, cl.representative)},
                                 {"t_order", cl.representative[0]}, {"members", members}});
        text += "class " + std::to_string(k + 1) + ": " + signature_text(c, cl.representative) + "\n";
    }
    rec["class_list"] = classes;
    Record table = Record::array();
    text += "composition (row + column; '.' where no boxed unit represents the sum):\n";
    for (std::size_t a = 0; a < pk.size(); ++a) {
        Record row = Record::array();
        std::string line;
        for (std::size_t b = 0; b < pk.size(); ++b) {
            auto s = pk.compose(a, b);
            if (s) {
                row.push_back(*s + 1);
                line += (b ? " " : "") + std::to_string(*s + 1);
            } else {
                row.push_back(nullptr);
                line += b ? " ." : ".";
            }
        }
        table.push_back(row);
        text += "  " + line + "\n";
    }
    rec["composition"] = table;
    emit(ctx, rec, text);
    return {};
}

Verdict cmd_birkhoff(Context& ctx) {
    RMatrix g = ctx.matrix();
    BirkhoffFactorization bf = birkhoff(g);
    Grid prod = grid_mul(grid_mul(bf.a_minus.entries(), split_diagonal(g.chart(), bf.split).entries()),
                         bf.a_plus.entries());
    bool ok = !grid_mismatch(prod, g.entries());
    Record rec{{"command", "birkhoff"},          {"split", int_list(bf.split)},
               {"a_minus", grid_record(bf.a_minus.entries())}, {"a_plus", grid_record(bf.a_plus.entries())},
               {"reconstructs", ok}};
    std::string text = "split " + int_tuple(bf.split) + "\n" + grid_text("a_minus", bf.a_minus.entries()) +
                       grid_text("a_plus", bf.a_plus.entries()) +
                       (ok ? "a_minus * diag(t^split) * a_plus = g\n" : "RECONSTRUCTION FAILED\n");
    emit(ctx, rec, text);
    return {ok};
}

USide u_side(const Options& o) {
    if (o.u_side == "chart") return USide::ChartLocalization;
    if (o.u_side == "infinity") return USide::ProjectiveComplement;
    throw Error("--u-side is 'chart' or 'infinity'");
}

Verdict cmd_factor(Context& ctx) {
    RMatrix g = ctx.matrix();
    TwoSidedFactor tf = two_sided_factor(g, u_side(ctx.opt()));
    Record rec{{"command", "factor"}, {"u_side", ctx.opt().u_side}, {"present", tf.present()}};
    std::string text;
    if (tf.present()) {
        rec["h_xhat"] = grid_record(tf.h_xhat->entries());
        rec["h_u"] = grid_record(tf.h_u->entries());
        text = "g = h_xhat * h_u\n" + grid_text("h_xhat", tf.h_xhat->entries()) + grid_text("h_u", tf.h_u->entries());
    } else {
        rec["obstruction"] = int_list(tf.obstruction);
        rec["reason"] = tf.reason;
        text = "no factorization: " + tf.reason + "\n";
        if (!tf.obstruction.empty()) text += "obstruction " + int_tuple(tf.obstruction) + "\n";
    }
    emit(ctx, rec, text);
    return {};
}

Verdict cmd_glue(Context& ctx) {
    RMatrix g = ctx.matrix();
    GlueClassification gc = bl_glue_free(g, u_side(ctx.opt()));
    Record rec{{"command", "glue"}, {"u_side", ctx.opt().u_side}, {"kind", kind_name(gc.kind)}};
    std::string text = kind_name(gc.kind);
    switch (gc.kind) {
        case GlueClassification::Kind::Free:
            rec["h_xhat"] = grid_record(gc.h_xhat->entries());
            rec["h_u"] = grid_record(gc.h_u->entries());
            text += "\n" + grid_text("h_xhat", gc.h_xhat->entries()) + grid_text("h_u", gc.h_u->entries());
            break;
        case GlueClassification::Kind::Obstructed:
            rec["split"] = int_list(gc.split);
            text += "(" + int_tuple(gc.split) + ")\n";
            break;
        case GlueClassification::Kind::Undecided:
            rec["reason"] = gc.reason;
            text += ": " + gc.reason + "\n";
            break;
    }
    emit(ctx, rec, text);
    return {};
}

Verdict cmd_fiber_sections(Context& ctx) {
    RMatrix g = ctx.matrix();
    Box box = ctx.box();
    FiberBasis fb = fiber_product_sections(g, box);
    Record rec{{"command", "fiber-sections"}, {"box", render_box(box)}, {"rank", fb.rank},
               {"dimension", fb.dimension()}};
    Record basis = Record::array();
    std::string text = "fiber product sections in box " + render_box(box) + ": dimension " +
                       std::to_string(fb.dimension()) + "\n";
    auto vec = [](const std::vector<TLaurent>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + render(v[i]);
        return s + ")";
    };
    for (std::size_t k = 0; k < fb.sections.size(); ++k) {
        const auto& s = fb.sections[k];
        Record u = Record::array(), v = Record::array();
        for (const auto& e : s.u) u.push_back(render(e));
        for (const auto& e : s.v) v.push_back(render(e));
        basis.push_back(Record{{"u", u}, {"v", v}});
        text += "[" + std::to_string(k + 1) + "] u = " + vec(s.u) + "  v = " + vec(s.v) + "\n";
    }
    rec["basis"] = basis;
    emit(ctx, rec, text);
    return {};
}

Verdict cmd_cocycle_check(Context& ctx) {
    Scene& s = ctx.scene();
    if (!s.bundle) throw MissingData("scene has no [bundle] section");
    CocycleReport rep = cocycle_check(s.cover, *s.bundle);
    Record rec{{"command", "cocycle-check"}, {"ok", rep.ok()}, {"checked", rep.checked}};
    Record fails = Record::array();
    std::string text;
    for (const auto& line : rep.checked) text += "checked " + line + "\n";
    for (const auto& f : rep.failures) {
        std::string charts;
        for (std::size_t i = 0; i < f.charts.size(); ++i) charts += (i ? "," : "") + f.charts[i];
        fails.push_back(Record{{"identity", f.identity}, {"charts", f.charts}, {"row", f.row + 1}, {"col", f.col + 1},
                               {"difference", f.difference}});
        text += "FAIL " + f.identity + " [" + charts + "] at entry (" + std::to_string(f.row + 1) + "," +
                std::to_string(f.col + 1) + "): difference " + f.difference + "\n";
    }
    rec["failures"] = fails;
    text += rep.ok() ? "cocycle ok\n" : "cocycle FAILED\n";
    emit(ctx, rec, text);
    return {rep.ok()};
}

// CLI11 reads "-4:5:0" as a flag; glue such values onto their option.
std::vector<std::string> attach_negative_values(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < args.size()) {
            const std::string& v = args[i + 1];
            if (v.size() > 1 && v[0] == '-' && (std::isdigit(static_cast<unsigned char>(v[1])) || v[1] == '[')) {
                out.push_back(a + "=" + v);
                ++i;
                continue;
            }
        }
        out.push_back(a);
    }
    return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Tubular descent toolkit: exact computations on charts, covers and semivaluations"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
        Verdict (*run)(Context&);
    };
    const std::vector<Command> commands = {
        {"classify", "region of a semivaluation point (U_ETA, Z_ETA or W)", cmd_classify},
        {"fiber", "fiber coordinate max |f_i| of a point of W", cmd_fiber},
        {"power", "raise a point to an integer power", cmd_power},
        {"chart-select", "smallest index attaining max |f_i| on W", cmd_chart_select},
        {"global-sections", "boxed global sections over a cover", cmd_global_sections},
        {"global-units", "boxed global units over a cover", cmd_global_units},
        {"pic-kernel", "double-quotient classes of boxed W-units", cmd_pic_kernel},
        {"birkhoff", "Birkhoff factorization of g over k((t))", cmd_birkhoff},
        {"factor", "two-sided factorization g = h_xhat * h_u", cmd_factor},
        {"glue", "decide whether the glued module is free", cmd_glue},
        {"fiber-sections", "boxed sections of the fiber product for g", cmd_fiber_sections},
        {"cocycle-check", "verify the cocycle identities of the scene's bundle", cmd_cocycle_check},
    };
    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--scene", opt.scene, "scene file, or p1 / p2 / p3");
        sub->add_option("--field", opt.field, "QQ or GF(p)");
        sub->add_option("--box", opt.box, "tmin:tmax:ydeg");
        sub->add_option("--prec", opt.prec, "truncate matrix entries at O(t^N)");
        sub->add_option("--format", opt.format, "text or record")->check(CLI::IsMember({"text", "record"}));
        sub->add_option("--chart", opt.chart, "chart (or overlap ring) name");
        sub->add_option("--matrix,--g", opt.matrix, "matrix over W, e.g. [[t, 1], [0, t^-1]], or @file");
        sub->add_option("--point", opt.point, "mono: t=1/2, y=1/4  or  eval: y=3; rho=1/2");
        sub->add_option("--gens", opt.gens, "comma-separated generators (default t)");
        sub->add_option("--tag", opt.tag, "ring tag U, XHAT or W");
        sub->add_option("--u-side", opt.u_side, "chart or infinity");
        sub->add_option("--s,--power", opt.power, "positive integer exponent");
        subs.emplace_back(sub, &c);
    }

    std::vector<std::string> argv = attach_negative_values(args);
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    for (const auto& [sub, cmd] : subs) {
        if (!sub->parsed()) continue;
        Context ctx(opt, out);
        try {
            Verdict v = cmd->run(ctx);
            return v.ok ? kExitOk : kExitVerificationFailed;
        } catch (const std::logic_error& e) {
            err << "verification failed: " << e.what() << "\n";
            return kExitVerificationFailed;
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return kExitInputError;
        }
    }
    return kExitInputError;
}

}  // namespace tubular
