#include "sheetlab/measure.hpp"

namespace sheetlab {

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

DiscreteMeasure DiscreteMeasure::projected() const {
  if (plane == Plane::Z) return *this;
  auto to_z = [](std::complex<double> t) { return 0.5 * (t + 1.0 / t); };
  DiscreteMeasure out;
  out.plane = Plane::Z;
  out.weights = weights;
  out.points.reserve(points.size());
  for (auto t : points) out.points.push_back(to_z(t));
  for (const auto& e : panels) out.panels.push_back({to_z(e[0]), to_z(e[1])});
  return out;
}

}  // namespace sheetlab
