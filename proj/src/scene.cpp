#include "tubular/scene.hpp"

#include <array>
#include <cctype>
#include <sstream>

#include "tubular/error.hpp"
#include "tubular/parse.hpp"

namespace tubular {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::vector<std::string> name_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            std::string n = trim(cur);
            if (!n.empty()) out.push_back(n);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    return out;
}

MonomialImage single_term(const TLaurent& a) {
    if (!a.is_exact() || a.is_zero() || a.high() != a.order() + 1 || a.lowest_coeff().size() != 1)
        throw Error("a variable image must be a single monomial term");
    const auto& term = a.lowest_coeff().terms().front();
    return {term.coef, a.order(), term.mono};
}

}  // namespace

Grid parse_grid(const std::string& text, const SpacePtr& space) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](char c) {
        skip();
        if (pos >= text.size() || text[pos] != c) throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    };
    Grid g;
    expect('[');
    while (true) {
        expect('[');
        std::vector<TLaurent> row;
        while (true) {
            std::size_t start = pos;
            while (pos < text.size() && text[pos] != ',' && text[pos] != ']' && text[pos] != '[') ++pos;
            if (pos >= text.size() || text[pos] == '[') throw ParseError("unterminated matrix row", pos);
            row.push_back(parse_element(text.substr(start, pos - start), space));
            if (text[pos] == ']') {
                ++pos;
                break;
            }
            ++pos;
        }
        g.push_back(std::move(row));
        skip();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        expect(']');
        break;
    }
    skip();
    if (pos != text.size()) throw ParseError("trailing text after matrix", pos);
    for (const auto& row : g)
        if (row.size() != g.size()) throw ParseError("matrix must be square", 0);
    return g;
}

std::string render_grid(const Grid& g) {
    std::string out = "[";
    for (std::size_t i = 0; i < g.size(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < g[i].size(); ++j) out += (j ? ", " : "") + render(g[i][j]);
        out += "]";
    }
    return out + "]";
}

std::string render_image(const SpacePtr& target, const MonomialImage& im) {
    return render(TLaurent::monomial(target, im.coef, im.t_degree, im.mono));
}

// ---------------------------------------------------------------- parsing

namespace {

struct PendingOverlap {
    std::size_t line;
    std::string from, to;
    std::vector<std::string> invert;
    std::vector<std::pair<std::size_t, std::string>> images;  // line, "lhs -> rhs"
};

struct PendingChart {
    std::size_t line;
    std::string name;
    std::string t = "t";
    std::vector<std::string> y;
    std::vector<std::string> invertible;
};

struct PendingMap {
    std::size_t line;
    std::string chart;
    std::vector<std::pair<std::size_t, std::string>> images;
};

struct PendingBundle {
    std::size_t line = 0;
    std::size_t rank = 1;
    std::string mode = "cocycle";
    std::string chart;
    std::vector<std::tuple<std::size_t, std::string, std::string, std::string>> gs;  // line, i, j, matrix
};

class SceneParser {
public:
    explicit SceneParser(const std::string& text) : text_(text) {}

    Scene run() {
        std::istringstream in(text_);
        std::string raw;
        std::size_t lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            auto hash = raw.find('#');
            std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (line.empty()) continue;
            try {
                if (line.front() == '[') {
                    open_section(line, lineno);
                } else {
                    body_line(line, lineno);
                }
            } catch (const SceneError&) {
                throw;
            } catch (const Error& e) {
                throw SceneError(e.what(), lineno);
            }
        }
        return assemble();
    }

private:
    enum class Section { None, Field, Defaults, Chart, Overlap, Triple, Interior, InteriorMap, Bundle };

    void open_section(const std::string& line, std::size_t ln) {
        if (line.back() != ']') throw SceneError("unterminated section header", ln);
        auto w = words(line.substr(1, line.size() - 2));
        if (w.empty()) throw SceneError("empty section header", ln);
        const std::string& kind = w[0];
        auto arity = [&](std::size_t n) {
            if (w.size() != n + 1) throw SceneError("[" + kind + "] takes " + std::to_string(n) + " argument(s)", ln);
        };
        if (kind == "field") {
            arity(0);
            section_ = Section::Field;
        } else if (kind == "defaults") {
            arity(0);
            section_ = Section::Defaults;
        } else if (kind == "chart") {
            arity(1);
            charts_.push_back({ln, w[1], "t", {}, {}});
            section_ = Section::Chart;
        } else if (kind == "overlap") {
            arity(2);
            overlaps_.push_back({ln, w[1], w[2], {}, {}});
            section_ = Section::Overlap;
        } else if (kind == "triple") {
            arity(3);
            triples_.push_back({ln, {w[1], w[2], w[3]}});
            section_ = Section::Triple;
        } else if (kind == "interior") {
            arity(1);
            if (interior_) throw SceneError("second [interior] section", ln);
            interior_ = PendingChart{ln, w[1], "", {}, {}};
            section_ = Section::Interior;
        } else if (kind == "interior-map") {
            arity(1);
            maps_.push_back({ln, w[1], {}});
            section_ = Section::InteriorMap;
        } else if (kind == "bundle") {
            arity(0);
            if (bundle_) throw SceneError("second [bundle] section", ln);
            bundle_ = PendingBundle{};
            bundle_->line = ln;
            section_ = Section::Bundle;
        } else {
            throw SceneError("unknown section [" + kind + "]", ln);
        }
    }

    static std::pair<std::string, std::string> key_value(const std::string& line, std::size_t ln) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw SceneError("expected 'key = value'", ln);
        return {trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
    }

    void body_line(const std::string& line, std::size_t ln) {
        switch (section_) {
            case Section::None: throw SceneError("content before any section", ln);
            case Section::Field:
                if (field_line_) throw SceneError("[field] holds a single line", ln);
                field_ = parse_field(line);
                field_line_ = ln;
                return;
            case Section::Defaults: {
                auto [k, v] = key_value(line, ln);
                if (k == "prec") {
                    try {
                        prec_ = std::stoi(v);
                    } catch (const std::exception&) {
                        throw SceneError("bad precision '" + v + "'", ln);
                    }
                    if (prec_ < 1) throw SceneError("precision must be positive", ln);
                } else if (k == "box") {
                    box_ = parse_box(v);
                } else {
                    throw SceneError("unknown default '" + k + "'", ln);
                }
                return;
            }
            case Section::Chart:
            case Section::Interior: {
                PendingChart& c = section_ == Section::Chart ? charts_.back() : *interior_;
                auto [k, v] = key_value(line, ln);
                if (k == "t" && section_ == Section::Chart) {
                    c.t = v;
                } else if (k == "y") {
                    c.y = name_list(v);
                } else if (k == "invertible") {
                    c.invertible = name_list(v);
                } else {
                    throw SceneError("unknown chart key '" + k + "'", ln);
                }
                return;
            }
            case Section::Overlap: {
                if (line.rfind("invert", 0) == 0 && line.find("->") == std::string::npos) {
                    overlaps_.back().invert = name_list(key_value(line, ln).second);
                    return;
                }
                overlaps_.back().images.push_back({ln, line});
                return;
            }
            case Section::InteriorMap: maps_.back().images.push_back({ln, line}); return;
            case Section::Triple: throw SceneError("[triple] has no body", ln);
            case Section::Bundle: {
                auto [k, v] = key_value(line, ln);
                auto w = words(k);
                if (w.size() == 1 && w[0] == "rank") {
                    int r = 0;
                    try {
                        r = std::stoi(v);
                    } catch (const std::exception&) {
                        throw SceneError("bad rank '" + v + "'", ln);
                    }
                    if (r < 1) throw SceneError("rank must be positive", ln);
                    bundle_->rank = static_cast<std::size_t>(r);
                } else if (w.size() == 1 && w[0] == "mode") {
                    if (v != "cocycle" && v != "affine") throw SceneError("mode is 'cocycle' or 'affine'", ln);
                    bundle_->mode = v;
                } else if (w.size() == 1 && w[0] == "chart") {
                    bundle_->chart = v;
                } else if (w.size() == 1 && w[0] == "g") {
                    bundle_->gs.emplace_back(ln, "", "", v);
                } else if (w.size() == 3 && w[0] == "g") {
                    bundle_->gs.emplace_back(ln, w[1], w[2], v);
                } else {
                    throw SceneError("unknown bundle key '" + k + "'", ln);
                }
                return;
            }
        }
    }

    SpacePtr make_chart_space(const PendingChart& c) const {
        std::vector<bool> inv(c.y.size(), false);
        for (const auto& n : c.invertible) {
            bool found = false;
            for (std::size_t i = 0; i < c.y.size(); ++i)
                if (c.y[i] == n) inv[i] = found = true;
            if (!found) throw SceneError("'" + n + "' is not a coordinate of '" + c.name + "'", c.line);
        }
        return make_space(field_, c.t, c.y, inv);
    }

    std::size_t chart_index(const Scene& s, const std::string& name, std::size_t ln) const {
        auto i = s.cover.index_of(name);
        if (!i) throw SceneError("undeclared chart '" + name + "'", ln);
        return *i;
    }

    // Reads "var -> image" lines into (t image, y images) for `source`.
    std::pair<MonomialImage, std::vector<MonomialImage>> read_images(
        const VarSpace& source, const SpacePtr& target, const std::vector<std::pair<std::size_t, std::string>>& lines,
        std::size_t header_line) const {
        std::optional<MonomialImage> t_image;
        std::vector<std::optional<MonomialImage>> ys(source.nvars());
        for (const auto& [ln, text] : lines) {
            auto arrow = text.find("->");
            if (arrow == std::string::npos) throw SceneError("expected 'variable -> image'", ln);
            std::string lhs = trim(text.substr(0, arrow));
            MonomialImage im;
            try {
                im = single_term(parse_element(trim(text.substr(arrow + 2)), target));
            } catch (const Error& e) {
                throw SceneError(e.what(), ln);
            }
            if (lhs == source.t_name) {
                if (t_image) throw SceneError("image of '" + lhs + "' given twice", ln);
                t_image = im;
            } else if (auto i = source.index_of(lhs)) {
                if (ys[*i]) throw SceneError("image of '" + lhs + "' given twice", ln);
                ys[*i] = im;
            } else {
                throw SceneError("'" + lhs + "' is not a variable of the source chart", ln);
            }
        }
        if (!t_image) throw SceneError("missing image of '" + source.t_name + "'", header_line);
        std::vector<MonomialImage> out;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            if (!ys[i]) throw SceneError("missing image of '" + source.y_names[i] + "'", header_line);
            out.push_back(*ys[i]);
        }
        return {*t_image, out};
    }

    Scene assemble() {
        Scene s(field_);
        s.prec = prec_;
        s.box = box_;
        for (const auto& c : charts_) {
            try {
                s.cover.add_chart(make_chart(c.name, make_chart_space(c)));
            } catch (const SceneError&) {
                throw;
            } catch (const Error& e) {
                throw SceneError(e.what(), c.line);
            }
        }
        for (const auto& o : overlaps_) {
            std::size_t i = chart_index(s, o.from, o.line);
            std::size_t j = chart_index(s, o.to, o.line);
            try {
                auto target = std::make_shared<const VarSpace>(s.cover.chart(j)->space->widened(o.invert));
                auto [t_im, y_im] = read_images(*s.cover.chart(i)->space, target, o.images, o.line);
                s.cover.add_overlap(i, j, o.invert, t_im, y_im);
            } catch (const SceneError&) {
                throw;
            } catch (const Error& e) {
                throw SceneError(e.what(), o.line);
            }
        }
        for (const auto& [ln, names] : triples_) {
            try {
                s.cover.add_triple(chart_index(s, names[0], ln), chart_index(s, names[1], ln),
                                   chart_index(s, names[2], ln));
            } catch (const SceneError&) {
                throw;
            } catch (const Error& e) {
                throw SceneError(e.what(), ln);
            }
        }
        if (interior_) {
            try {
                if (s.cover.index_of(interior_->name)) throw Error("interior patch reuses a chart name");
                s.cover.set_interior(interior_->name, make_chart_space(*interior_));
            } catch (const SceneError&) {
                throw;
            } catch (const Error& e) {
                throw SceneError(e.what(), interior_->line);
            }
        }
        for (const auto& m : maps_) {
            if (!interior_) throw SceneError("[interior-map] without an [interior] section", m.line);
            std::size_t i = chart_index(s, m.chart, m.line);
            try {
                auto target = std::make_shared<const VarSpace>(s.cover.interior()->space->fully_localized());
                auto source = *s.cover.chart(i)->space;
                auto [t_im, y_im] = read_images(source, target, m.images, m.line);
                s.cover.add_interior_map(i, t_im, y_im);
            } catch (const SceneError&) {
                throw;
            } catch (const Error& e) {
                throw SceneError(e.what(), m.line);
            }
        }
        if (bundle_) s.bundle = assemble_bundle(s);
        return s;
    }

    BundleDatum assemble_bundle(const Scene& s) const {
        BundleDatum d;
        d.rank = bundle_->rank;
        d.mode = bundle_->mode == "affine" ? BundleDatum::Mode::Affine : BundleDatum::Mode::Cocycle;
        if (d.mode == BundleDatum::Mode::Affine) {
            if (bundle_->chart.empty()) throw SceneError("affine bundle needs 'chart = <name>'", bundle_->line);
            d.affine_chart = chart_index(s, bundle_->chart, bundle_->line);
        }
        for (const auto& [ln, a, b, text] : bundle_->gs) {
            try {
                if (d.mode == BundleDatum::Mode::Affine) {
                    if (!a.empty()) throw Error("affine bundles take a single 'g = ...'");
                    if (d.affine_g) throw Error("'g' given twice");
                    const ChartPtr& c = s.cover.chart(d.affine_chart);
                    d.affine_g = RMatrix(c, RingTag::W, parse_grid(text, c->space));
                    if (d.affine_g->rank() != d.rank) throw Error("matrix rank differs from the bundle rank");
                    continue;
                }
                if (a.empty()) throw Error("cocycle bundles take 'g <from> <to> = ...'");
                std::size_t i = chart_index(s, a, ln);
                std::size_t j = chart_index(s, b, ln);
                ChartPtr ring = i == j ? s.cover.chart(i) : s.cover.require_overlap(i, j).chart;
                RMatrix g(ring, RingTag::W, parse_grid(text, ring->space));
                if (g.rank() != d.rank) throw Error("matrix rank differs from the bundle rank");
                if (!d.cocycle.emplace(std::make_pair(i, j), std::move(g)).second)
                    throw Error("transition " + a + " -> " + b + " given twice");
            } catch (const SceneError&) {
                throw;
            } catch (const Error& e) {
                throw SceneError(e.what(), ln);
            }
        }
        if (d.mode == BundleDatum::Mode::Affine && !d.affine_g)
            throw SceneError("affine bundle needs 'g = ...'", bundle_->line);
        return d;
    }

    std::string text_;
    Section section_ = Section::None;
    Field field_ = Field::rationals();
    std::size_t field_line_ = 0;
    int prec_ = kDefaultPrecision;
    std::optional<Box> box_;
    std::vector<PendingChart> charts_;
    std::vector<PendingOverlap> overlaps_;
    std::vector<std::pair<std::size_t, std::array<std::string, 3>>> triples_;
    std::optional<PendingChart> interior_;
    std::vector<PendingMap> maps_;
    std::optional<PendingBundle> bundle_;
};

}  // namespace

Scene parse_scene(const std::string& text) { return SceneParser(text).run(); }

// ---------------------------------------------------------------- rendering

namespace {

std::string joined(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
    return out;
}

void render_space_keys(std::ostream& out, const VarSpace& sp) {
    if (sp.has_t()) out << "t = " << sp.t_name << "\n";
    if (!sp.y_names.empty()) out << "y = " << joined(sp.y_names) << "\n";
    std::vector<std::string> inv;
    for (std::size_t i = 0; i < sp.nvars(); ++i)
        if (sp.invertible[i]) inv.push_back(sp.y_names[i]);
    if (!inv.empty()) out << "invertible = " << joined(inv) << "\n";
}

void render_images(std::ostream& out, const Substitution& s) {
    out << s.source()->t_name << " -> " << render_image(s.target(), s.t_image()) << "\n";
    for (std::size_t i = 0; i < s.y_images().size(); ++i)
        out << s.source()->y_names[i] << " -> " << render_image(s.target(), s.y_images()[i]) << "\n";
}

}  // namespace

std::string render_scene(const Scene& scene) {
    const Cover& c = scene.cover;
    std::ostringstream out;
    out << "[field]\n" << c.field().name() << "\n";
    out << "\n[defaults]\nprec = " << scene.prec << "\n";
    if (scene.box) out << "box = " << render_box(*scene.box) << "\n";
    for (const auto& ch : c.charts()) {
        out << "\n[chart " << ch->name << "]\n";
        render_space_keys(out, *ch->space);
    }
    for (const auto& [key, ov] : c.overlaps()) {
        out << "\n[overlap " << c.chart(key.first)->name << " " << c.chart(key.second)->name << "]\n";
        const VarSpace& base = *c.chart(key.second)->space;
        std::vector<std::string> inv;
        for (std::size_t i = 0; i < base.nvars(); ++i)
            if (ov.chart->space->invertible[i] && !base.invertible[i]) inv.push_back(base.y_names[i]);
        if (!inv.empty()) out << "invert = " << joined(inv) << "\n";
        render_images(out, ov.sigma);
    }
    for (const auto& tr : c.triples())
        out << "\n[triple " << c.chart(tr[0])->name << " " << c.chart(tr[1])->name << " " << c.chart(tr[2])->name
            << "]\n";
    if (const auto& ip = c.interior()) {
        out << "\n[interior " << ip->name << "]\n";
        render_space_keys(out, *ip->space);
        for (std::size_t i = 0; i < ip->maps.size(); ++i) {
            if (!ip->maps[i]) continue;
            out << "\n[interior-map " << c.chart(i)->name << "]\n";
            render_images(out, *ip->maps[i]);
        }
    }
    if (scene.bundle) {
        const BundleDatum& d = *scene.bundle;
        out << "\n[bundle]\nrank = " << d.rank << "\n";
        if (d.mode == BundleDatum::Mode::Affine) {
            out << "mode = affine\nchart = " << c.chart(d.affine_chart)->name << "\n";
            out << "g = " << render_grid(d.affine_g->entries()) << "\n";
        } else {
            out << "mode = cocycle\n";
            for (const auto& [key, g] : d.cocycle)
                out << "g " << c.chart(key.first)->name << " " << c.chart(key.second)->name << " = "
                    << render_grid(g.entries()) << "\n";
        }
    }
    return out.str();
}

// ---------------------------------------------------------------- P^r

Scene build_projective(int r, Field field) {
    if (r < 1 || r > 3) throw Unsupported("built-in projective scenes exist for r = 1, 2, 3");
    Scene s(field);
    s.name = "p" + std::to_string(r);
    auto yname = [](int j) { return "y" + std::to_string(j); };
    // Chart i (1-based) has coordinates yj = xj/xi for j != 0, i.
    auto coords = [&](int i) {
        std::vector<std::string> v;
        for (int j = 1; j <= r; ++j)
            if (j != i) v.push_back(yname(j));
        return v;
    };
    for (int i = 1; i <= r; ++i) s.cover.add_chart(make_chart("c" + std::to_string(i), make_space(field, "t", coords(i))));

    Scalar one = Scalar::one(field);
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) {
            if (i == j) continue;
            const ChartPtr& target = s.cover.chart(static_cast<std::size_t>(j - 1));
            const VarSpace& tsp = *target->space;
            auto mono = [&](std::initializer_list<std::pair<std::string, int>> parts) {
                Monomial m(tsp.nvars());
                for (const auto& [n, e] : parts) m.exp[*tsp.index_of(n)] += e;
                return m;
            };
            // xi-based ratios in terms of xj-based ones: x0/xi = (x0/xj)(xj/xi).
            MonomialImage t_im{one, 1, mono({{yname(i), -1}})};
            std::vector<MonomialImage> ys;
            for (const auto& name : coords(i)) {
                int k = std::stoi(name.substr(1));
                if (k == j)
                    ys.push_back({one, 0, mono({{yname(i), -1}})});
                else
                    ys.push_back({one, 0, mono({{name, 1}, {yname(i), -1}})});
            }
            s.cover.add_overlap(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), {yname(i)}, t_im,
                                ys);
        }
    if (r == 3) s.cover.add_triple(0, 1, 2);

    std::vector<std::string> snames;
    for (int j = 1; j <= r; ++j) snames.push_back("s" + std::to_string(j));
    s.cover.set_interior("c0", make_space(field, "", snames));
    for (int i = 1; i <= r; ++i) {
        auto smono = [&](int k, int e, int kk = 0, int ee = 0) {
            Monomial m(static_cast<std::size_t>(r));
            m.exp[static_cast<std::size_t>(k - 1)] += e;
            if (kk) m.exp[static_cast<std::size_t>(kk - 1)] += ee;
            return m;
        };
        MonomialImage t_im{one, 0, smono(i, -1)};
        std::vector<MonomialImage> ys;
        for (const auto& name : coords(i)) ys.push_back({one, 0, smono(std::stoi(name.substr(1)), 1, i, -1)});
        s.cover.add_interior_map(static_cast<std::size_t>(i - 1), t_im, ys);
    }
    return s;
}

}  // namespace tubular
