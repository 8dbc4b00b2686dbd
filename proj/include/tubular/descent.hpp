#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tubular/birkhoff.hpp"
#include "tubular/box.hpp"

namespace tubular {

// Directed overlap i -> j. Its ring is chart j's ring with extra variables
// made invertible; sigma maps chart i's coordinates into it.
struct Overlap {
    std::size_t from = 0;
    std::size_t to = 0;
    ChartPtr chart;
    Substitution sigma;
};

// Optional patch of U = X - Z away from every chart's Z, with coordinates
// and no t. Each chart maps into it on exact (U-ring) elements. It is only
// consulted for U-ring computations and is not one of the cover's charts.
struct InteriorPatch {
    std::string name;
    SpacePtr space;
    std::vector<std::optional<Substitution>> maps;  // indexed by chart
};

class Cover {
public:
    explicit Cover(Field field) : field_(field) {}

    Field field() const { return field_; }
    std::size_t add_chart(ChartPtr chart);
    // `invertible` lists the coordinates of chart `to` inverted on the overlap.
    // `images` gives sigma's images of chart `from`'s variables (t first).
    void add_overlap(std::size_t from, std::size_t to, const std::vector<std::string>& invertible,
                     MonomialImage t_image, std::vector<MonomialImage> y_images);
    void add_triple(std::size_t i, std::size_t j, std::size_t k);
    void set_interior(std::string name, SpacePtr space);
    void add_interior_map(std::size_t chart, MonomialImage t_image, std::vector<MonomialImage> y_images);

    const std::vector<ChartPtr>& charts() const { return charts_; }
    std::size_t chart_count() const { return charts_.size(); }
    const ChartPtr& chart(std::size_t i) const { return charts_.at(i); }
    std::optional<std::size_t> index_of(const std::string& name) const;
    ChartPtr find_chart(const std::string& name) const;  // charts and overlap rings

    const std::map<std::pair<std::size_t, std::size_t>, Overlap>& overlaps() const { return overlaps_; }
    const Overlap* overlap(std::size_t i, std::size_t j) const;
    const Overlap& require_overlap(std::size_t i, std::size_t j) const;
    const std::vector<std::array<std::size_t, 3>>& triples() const { return triples_; }
    const std::optional<InteriorPatch>& interior() const { return interior_; }

private:
    Field field_;
    std::vector<ChartPtr> charts_;
    std::map<std::pair<std::size_t, std::size_t>, Overlap> overlaps_;
    std::vector<std::array<std::size_t, 3>> triples_;
    std::optional<InteriorPatch> interior_;
};

std::string overlap_chart_name(const std::string& from, const std::string& to);

// Rank-r gluing data. Cocycle mode: g_ij over the W-ring of overlap i -> j
// (g_ii over chart i). Affine mode: one g over W of a single chart.
struct BundleDatum {
    enum class Mode { Affine, Cocycle };
    Mode mode = Mode::Cocycle;
    std::size_t rank = 1;
    std::size_t affine_chart = 0;
    std::optional<RMatrix> affine_g;
    std::map<std::pair<std::size_t, std::size_t>, RMatrix> cocycle;
};

struct CocycleFailure {
    std::string identity;              // which identity failed
    std::vector<std::string> charts;   // chart names involved, in identity order
    std::size_t row = 0;
    std::size_t col = 0;
    std::string difference;            // rendered lhs - rhs, or a reason
};

struct CocycleReport {
    std::vector<std::string> checked;  // one line per identity verified
    std::vector<CocycleFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Checks g_ii = I, g_ji * sigma_ji(g_ij) = I for every registered pair and
// g_ik = g_jk * sigma_jk(g_ij) on every triple, in chart k with all
// coordinates inverted. Also checks sigma_jk o sigma_ij = sigma_ik.
CocycleReport cocycle_check(const Cover& cover, const BundleDatum& datum);

struct ForwardImages {
    RMatrix u;
    RMatrix xhat;
    RMatrix w_via_u;
    RMatrix w_via_xhat;
    bool square_commutes = false;
};

ForwardImages forward_images(const RMatrix& p, int prec = kDefaultPrecision);

struct GlueClassification {
    enum class Kind { Free, Obstructed, Undecided };
    Kind kind = Kind::Undecided;
    std::optional<RMatrix> h_xhat;
    std::optional<RMatrix> h_u;
    std::vector<int> split;
    std::string reason;
};

std::string kind_name(GlueClassification::Kind k);

GlueClassification bl_glue_free(const RMatrix& g, USide side = USide::ChartLocalization);

// Pairs (u, v) with u over U in the box, v over XHAT and g * u = v.
struct FiberSection {
    std::vector<TLaurent> u;
    std::vector<TLaurent> v;
};

struct FiberBasis {
    Box box;
    std::size_t rank = 1;
    std::vector<FiberSection> sections;
    std::size_t dimension() const { return sections.size(); }
};

FiberBasis fiber_product_sections(const RMatrix& g, const Box& box);

// Tuples (s_i) over the charts with sigma_ij(s_i) = s_j on every overlap.
// W and XHAT compare below the top of the box; U compares exactly and also
// requires agreement on the interior patch when the cover has one.
struct SectionBasis {
    RingTag tag = RingTag::W;
    Box box;
    std::vector<std::vector<TLaurent>> vectors;
    std::size_t dimension() const { return vectors.size(); }
};

SectionBasis global_sections(const Cover& cover, RingTag tag, const Box& box);

// Whether a tuple satisfies every overlap (and interior) condition in the box.
bool is_global_section(const Cover& cover, RingTag tag, const Box& box, const std::vector<TLaurent>& comps);

struct UnitGroup {
    RingTag tag = RingTag::W;
    std::vector<std::vector<TLaurent>> units;       // boxed basis sections that are units
    std::vector<std::vector<TLaurent>> generators;  // the non-constant ones
    std::vector<std::vector<int>> signatures;       // lowest term of chart 0: (t, y...)
};

UnitGroup global_units(const Cover& cover, const Box& box, RingTag tag = RingTag::W);

std::vector<int> unit_signature(const TLaurent& a);

struct PicClass {
    std::vector<int> representative;
    std::vector<std::vector<int>> members;
};

// Classes of boxed W-units modulo the subgroup generated by U-units and
// XHAT-units (compared through their signatures).
struct PicKernel {
    std::vector<PicClass> classes;
    std::vector<std::vector<int>> u_signatures;
    std::vector<std::vector<int>> xhat_signatures;

    std::size_t size() const { return classes.size(); }
    std::optional<std::size_t> class_of(const std::vector<int>& signature) const;
    // Class of rep_a + rep_b when some boxed W-unit represents it.
    std::optional<std::size_t> compose(std::size_t a, std::size_t b) const;

    std::vector<std::vector<int>> subgroup_generators;
};

PicKernel pic_kernel_classes(const Cover& cover, const Box& box);

}  // namespace tubular
