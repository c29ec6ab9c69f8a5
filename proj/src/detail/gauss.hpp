#pragma once
// Gauss-Legendre rules mapped to [0, 1].

#include <boost/math/quadrature/gauss.hpp>

#include <array>

namespace sheetlab::detail {

template <int N>
struct UnitGauss {
  std::array<double, N> x{};
  std::array<double, N> w{};

  UnitGauss() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    int k = 0;
    // a[0] is the node nearest zero; emit in increasing order on [0, 1].
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
      if (N % 2 == 1 && i == 0) continue;
      x[k] = 0.5 * (1.0 - a[i]);
      w[k++] = 0.5 * wt[i];
    }
    if (N % 2 == 1) {
      x[k] = 0.5;
      w[k++] = 0.5 * wt[0];
    }
    for (std::size_t i = N % 2 == 1 ? 1 : 0; i < a.size(); ++i) {
      x[k] = 0.5 * (1.0 + a[i]);
      w[k++] = 0.5 * wt[i];
    }
  }

  static const UnitGauss& get() {
    static const UnitGauss g;
    return g;
  }
};

}  // namespace sheetlab::detail
