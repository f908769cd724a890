#pragma once

#include <string>

#include "fplap/field.hpp"

namespace fplap {

enum class Shape { box, triangle, two_bump, dirac_box };

Shape parse_shape(const std::string& name);
const char* to_string(Shape s);

// nonnegative even data with discrete mass exactly `mass` (no tail)
// box and triangle have half-width `width`; two-bump puts bumps at +-width
Field make_shape(Shape shape, const Params& prm, const Grid& grid, double mass,
                 double width = 1.0);

Field box(const Params& prm, const Grid& grid, double mass, double half_width = 1.0);
// height 1/(2 delta0), delta0 = 4h
Field dirac_box(const Params& prm, const Grid& grid, double mass);
// c (1 - (x/w)^2)^2 on |x| < w
Field smooth_bump(const Params& prm, const Grid& grid, double mass, double half_width);
Field zero_field(const Params& prm, const Grid& grid);

}  // namespace fplap
