#pragma once

#include <optional>
#include <vector>

#include "tubular/chart.hpp"

namespace tubular {

using Grid = std::vector<std::vector<TLaurent>>;

Grid grid_identity(const SpacePtr& space, std::size_t r);
Grid grid_mul(const Grid& a, const Grid& b);
Grid grid_transpose(const Grid& a);
// Laplace expansion along the first row.
TLaurent grid_det(const Grid& a);

// Square matrix over one tagged ring of one chart. All entries share one
// value space, which may widen the chart's own space on overlaps.
class RMatrix {
public:
    RMatrix(ChartPtr chart, RingTag tag, Grid entries);
    static RMatrix identity(ChartPtr chart, RingTag tag, std::size_t r, SpacePtr space = nullptr);
    static RMatrix from_elements(const std::vector<std::vector<Element>>& rows);

    std::size_t rank() const { return entries_.size(); }
    const ChartPtr& chart() const { return chart_; }
    RingTag tag() const { return tag_; }
    const SpacePtr& space() const { return entries_[0][0].space_ptr(); }
    const Grid& entries() const { return entries_; }
    const TLaurent& at(std::size_t i, std::size_t j) const { return entries_[i][j]; }
    Element element(std::size_t i, std::size_t j) const { return Element(chart_, tag_, entries_[i][j]); }

    // Lowest entry precision (kExact when all entries are exact).
    int min_prec() const;
    RMatrix transpose() const;
    RMatrix retagged(RingTag tag) const;

    friend bool operator==(const RMatrix& a, const RMatrix& b);

private:
    ChartPtr chart_;
    RingTag tag_;
    Grid entries_;
};

RMatrix mat_mul(const RMatrix& a, const RMatrix& b);
Element mat_det(const RMatrix& m);
// Gauss-Jordan with unit pivots, adjugate when no unit pivot exists.
RMatrix mat_inv(const RMatrix& m, int relative_prec = kDefaultPrecision);

bool gl_check(const RMatrix& m);
// False when the entries do not even form a matrix over the tag ring.
bool gl_check(const ChartPtr& chart, RingTag tag, const Grid& entries);

RMatrix mat_embed(const RMatrix& m, RingTag to, int prec = kDefaultPrecision);
RMatrix mat_hom(const RMatrix& m, const Substitution& sigma, ChartPtr target);

struct EntryMismatch {
    std::size_t row = 0;
    std::size_t col = 0;
    TLaurent difference;
};

// First entry (row-major) where the two grids disagree at matched precision.
std::optional<EntryMismatch> grid_mismatch(const Grid& a, const Grid& b);

}  // namespace tubular
