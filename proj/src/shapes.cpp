#include "fplap/shapes.hpp"

#include <cmath>

#include "fplap/norms.hpp"

namespace fplap {

Shape parse_shape(const std::string& name) {
  if (name == "box") return Shape::box;
  if (name == "triangle") return Shape::triangle;
  if (name == "two-bump") return Shape::two_bump;
  if (name == "dirac-box") return Shape::dirac_box;
  throw ValidationError("unknown shape '" + name + "' (box|triangle|two-bump|dirac-box)");
}

const char* to_string(Shape s) {
  switch (s) {
    case Shape::box: return "box";
    case Shape::triangle: return "triangle";
    case Shape::two_bump: return "two-bump";
    case Shape::dirac_box: return "dirac-box";
  }
  return "?";
}

namespace {

Field normalized(const Params& prm, const Grid& g, Eigen::VectorXd v, double m) {
  const double raw = 2.0 * g.h() * v.sum();
  if (!(raw > 0.0)) throw ValidationError("shape is not resolved by the grid");
  v *= m / raw;
  return Field(prm, g, v, TailModel{0.0, prm.q()}, 0.0, TimeKind::physical, m >= 0.0);
}

}  // namespace

Field make_shape(Shape shape, const Params& prm, const Grid& g, double m, double width) {
  if (!(width > 0.0)) throw ValidationError("shape width must be > 0");
  if (shape == Shape::dirac_box) return dirac_box(prm, g, m);
  if (width >= g.R) throw ValidationError("shape does not fit inside the grid");
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    switch (shape) {
      case Shape::box: v[i] = x < width ? 1.0 : 0.0; break;
      case Shape::triangle: v[i] = std::max(0.0, 1.0 - x / width); break;
      case Shape::two_bump: {
        // bumps of half-width width/2 centred at +-width
        const double z = (x - width) / (0.5 * width);
        v[i] = std::abs(z) < 1.0 ? (1 - z * z) * (1 - z * z) : 0.0;
        break;
      }
      default: break;
    }
  }
  return normalized(prm, g, v, m);
}

Field box(const Params& prm, const Grid& g, double m, double half_width) {
  return make_shape(Shape::box, prm, g, m, half_width);
}

Field dirac_box(const Params& prm, const Grid& g, double m) {
  const double delta0 = 4.0 * g.h();
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = g.x(i) < delta0 ? 1.0 / (2.0 * delta0) : 0.0;
  return normalized(prm, g, v, m);
}

Field smooth_bump(const Params& prm, const Grid& g, double m, double w) {
  if (!(w > 0.0) || w >= g.R) throw ValidationError("bump half-width must lie in (0, R)");
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double z = g.x(i) / w;
    v[i] = z < 1.0 ? (1 - z * z) * (1 - z * z) : 0.0;
  }
  return normalized(prm, g, v, m);
}

Field zero_field(const Params& prm, const Grid& g) {
  return Field(prm, g, Eigen::VectorXd::Zero(g.n), TailModel{0.0, prm.q()}, 0.0,
               TimeKind::physical, true);
}

}  // namespace fplap
