#include "shqr/shifting.hpp"

//
// ... Standard header files
//
#include <cmath>
#include <numbers>

namespace shqr {

  double net_size_bound(double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("net_size_bound: epsilon must be positive");
    const double t = 1.99 + 1.0 / (0.99 * epsilon);
    return 2.0 * std::numbers::pi / (3.0 * std::sqrt(3.0)) * t * t + 4.0 * std::sqrt(2.0) / std::sqrt(3.0) * t + 1.0;
  }

  std::vector<Cplx> build_net(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 2.0) throw DomainError("build_net: epsilon must lie in (0, 2]");
    const double d = std::sqrt(3.0) * 0.99 * epsilon;
    const double radius = 1.0 + 1.99 * epsilon;
    const double row_h = d * std::sqrt(3.0) / 2.0;
    const long bmax = static_cast<long>(std::ceil(radius / row_h));
    std::vector<Cplx> pts;
    for (long b = -bmax; b <= bmax; ++b) {
      const double y = row_h * static_cast<double>(b);
      const double shift = 0.5 * d * static_cast<double>(b);
      const long amin = static_cast<long>(std::floor((-radius - shift) / d)) - 1;
      const long amax = static_cast<long>(std::ceil((radius - shift) / d)) + 1;
      for (long a = amin; a <= amax; ++a) {
        const double x = d * static_cast<double>(a) + shift;
        if (x * x + y * y <= radius * radius) pts.emplace_back(x, y);
      }
    }
    return pts;
  }

  double exc_epsilon(const GlobalData& g, double xi) {
    const double k = static_cast<double>(g.k);
    const double base =
      xi * (1.0 - g.gamma) / (std::pow(13.0 * std::pow(g.B, 4.0), 1.0 / k) * g.alpha * g.alpha * g.theta * g.theta);
    return std::pow(base, k / (k - 1.0));
  }

} // namespace shqr
