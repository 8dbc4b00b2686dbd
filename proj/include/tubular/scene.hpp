#pragma once

#include <optional>
#include <string>

#include "tubular/descent.hpp"

namespace tubular {

struct Scene {
    explicit Scene(Field f) : cover(f) {}

    std::string name;
    Cover cover;
    std::optional<BundleDatum> bundle;
    int prec = kDefaultPrecision;
    std::optional<Box> box;
};

// Line-oriented scene format; see docs/scene-format.md. Errors carry the
// offending line number.
Scene parse_scene(const std::string& text);
std::string render_scene(const Scene& scene);

// P^r with Z = {x0 = 0}: charts c1..cr with t = x0/xi and yj = xj/xi, all
// directed overlaps, the triple (c1,c2,c3) when r = 3, and the interior
// patch c0 = Spec k[s1..sr] with sj = xj/x0.
Scene build_projective(int r, Field field = Field::rationals());

// "[[a, b], [c, d]]" with entries in the element grammar.
Grid parse_grid(const std::string& text, const SpacePtr& space);
std::string render_grid(const Grid& g);

std::string render_image(const SpacePtr& target, const MonomialImage& im);

}  // namespace tubular
