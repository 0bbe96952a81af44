#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "pscub/oracle.hpp"

namespace pscub {

namespace {

void require_in(const Volume& lambda, int g) {
  if (!volume_contains(lambda, g))
    throw Error(Errc::PreconditionViolated, "polymer " + std::to_string(g) + " not in volume");
}

}  // namespace

double telescoping_relative_error(const PolymerSystem& sys, const Volume& lambda,
                                  const std::vector<int>& order, const FugacityVector& z) {
  Volume sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != lambda)
    throw Error(Errc::PreconditionViolated, "order must enumerate the volume");
  Volume cur = lambda;
  double prod = 1.0;
  for (int g : order) {
    prod *= one_polymer_ratio(sys, cur, g, z);
    cur = volume_without(cur, g);
  }
  const double xi = partition_function(sys, lambda, z);
  return std::abs(prod - xi) / std::max(std::abs(xi), 1e-300);
}

double product_identity_residual(const PolymerSystem& sys, const Volume& lambda, int g,
                                 const FugacityVector& z) {
  Volume cur = lambda;
  double prod = 1.0;
  require_in(lambda, g);
  for (int x : volume_intersect(lambda, sys.incompatible_set(g))) {
    prod /= one_polymer_ratio(sys, cur, x, z);
    cur = volume_without(cur, x);
  }
  return pinned_connected_function(sys, lambda, g, z) - prod;
}

double integral_identity_residual(const PolymerSystem& sys, const Volume& lambda, int g,
                                  const FugacityVector& z) {
  FugacityVector w = z;
  auto f = [&](double a) {
    w[g] = a * z[g];
    return pinned_connected_function(sys, lambda, g, w);
  };
  double err = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-13, &err);
  return std::log(one_polymer_ratio(sys, lambda, g, z)) - z[g] * integral;
}

}  // namespace pscub
