#include "adiosc/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace adiosc {

Partition1D uniform_partition(int n) {
  if (n <= 0) throw std::domain_error("uniform_partition: need at least one element");
  Partition1D p;
  p.nodes.resize(n + 1);
  for (int i = 0; i <= n; ++i) p.nodes[i] = static_cast<double>(i) / n;
  p.nodes.front() = 0.0;
  p.nodes.back() = 1.0;
  p.widths.resize(n);
  p.h_max = 0.0;
  p.h_min = 1.0;
  for (int i = 0; i < n; ++i) {
    p.widths[i] = p.nodes[i + 1] - p.nodes[i];
    p.h_max = std::max(p.h_max, p.widths[i]);
    p.h_min = std::min(p.h_min, p.widths[i]);
  }
  return p;
}

Partition1D make_partition(std::vector<double> nodes) {
  if (nodes.size() < 2) throw std::domain_error("make_partition: need at least two nodes");
  if (nodes.front() != 0.0 || nodes.back() != 1.0)
    throw std::domain_error("make_partition: endpoints must be exactly 0 and 1");
  Partition1D p;
  p.nodes = std::move(nodes);
  const int n = static_cast<int>(p.nodes.size()) - 1;
  p.widths.resize(n);
  p.h_max = 0.0;
  p.h_min = 1.0;
  for (int i = 0; i < n; ++i) {
    const double h = p.nodes[i + 1] - p.nodes[i];
    if (h <= 0.0) throw std::domain_error("make_partition: nodes must be strictly increasing");
    p.widths[i] = h;
    p.h_max = std::max(p.h_max, h);
    p.h_min = std::min(p.h_min, h);
  }
  if (p.quasi_uniformity() > 10.0) {
    std::fprintf(stderr, "warning: partition quasi-uniformity ratio %.3g exceeds 10\n",
                 p.quasi_uniformity());
  }
  return p;
}

namespace {

// Legendre roots on [-1,1] by Newton iteration, then mapped to [0,1].
GaussRule compute_gauss(int m) {
  GaussRule r;
  r.count = m;
  r.nodes.assign(m, 0.0);
  r.weights.assign(m, 0.0);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // standard starting guess for the i-th root (descending in z)
    double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 0; k < m; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k + 1.0) * z * p2 - k * p3) / (k + 1.0);
      }
      pp = m * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    // z is the root nearest +1 for i = 0; map and mirror so nodes ascend
    const double x_hi = 0.5 * (1.0 + z);
    const double w = 1.0 / ((1.0 - z * z) * pp * pp);  // includes the /2 of the affine map
    r.nodes[m - 1 - i] = x_hi;
    r.nodes[i] = 1.0 - x_hi;  // enforced symmetry about 1/2
    r.weights[m - 1 - i] = w;
    r.weights[i] = w;
  }
  if (m % 2 == 1) r.nodes[m / 2] = 0.5;
  return r;
}

}  // namespace

const GaussRule& gauss_rule(int count) {
  if (count < 1 || count > 16) throw std::domain_error("gauss_rule: count must be in [1,16]");
  static const std::vector<GaussRule> table = [] {
    std::vector<GaussRule> t(17);
    for (int m = 1; m <= 16; ++m) t[m] = compute_gauss(m);
    return t;
  }();
  return table[count];
}

CollocationGrid collocation_grid(const Partition1D& px, const Partition1D& py,
                                 const GaussRule& rule) {
  if (rule.count != 2)
    throw std::domain_error("collocation_grid: the piecewise-cubic space needs the 2-point rule");
  CollocationGrid g;
  auto fill = [&rule](const Partition1D& p, std::vector<double>& xi, std::vector<double>& w) {
    xi.reserve(p.elements() * rule.count);
    w.reserve(p.elements() * rule.count);
    for (int i = 0; i < p.elements(); ++i) {
      for (int k = 0; k < rule.count; ++k) {
        xi.push_back(p.nodes[i] + rule.nodes[k] * p.widths[i]);
        w.push_back(p.widths[i] * rule.weights[k]);
      }
    }
  };
  fill(px, g.xi_x, g.wx);
  fill(py, g.xi_y, g.wy);
  return g;
}

}  // namespace adiosc
