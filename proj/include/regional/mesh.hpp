#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace regional {

/// 1D node set on [a,b], graded polynomially toward singular endpoints.
struct GradedMesh {
  Eigen::VectorXd nodes;
  double mu = 1.0;

  int size() const { return static_cast<int>(nodes.size()) - 1; }  // elements
  double a() const { return nodes[0]; }
  double b() const { return nodes[nodes.size() - 1]; }

  void validate() const {
    if (nodes.size() < 2) throw std::invalid_argument("mesh needs >= 2 nodes");
    for (Eigen::Index i = 1; i < nodes.size(); ++i)
      if (!(nodes[i] > nodes[i - 1]))
        throw std::invalid_argument("mesh nodes must be strictly increasing");
  }
};

/// Symmetric grading toward both endpoints: node spacing ~ (j/n)^mu / n
/// near each boundary. mu = 1 gives a uniform mesh.
inline GradedMesh graded_mesh_both(int n, double mu, double a = 0.0, double b = 1.0) {
  if (n < 2) throw std::invalid_argument("graded_mesh_both: n must be >= 2");
  if (mu < 1.0) throw std::invalid_argument("grading exponent must be >= 1");
  GradedMesh mesh;
  mesh.mu = mu;
  mesh.nodes.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double g = (t <= 0.5) ? 0.5 * std::pow(2.0 * t, mu)
                                : 1.0 - 0.5 * std::pow(2.0 * (1.0 - t), mu);
    mesh.nodes[i] = a + (b - a) * g;
  }
  mesh.nodes[0] = a;
  mesh.nodes[n] = b;
  mesh.validate();
  return mesh;
}

/// Grading toward the right endpoint only (used for the disk boundary r=1).
inline GradedMesh graded_mesh_right(int n, double mu, double a = 0.0, double b = 1.0) {
  if (n < 2) throw std::invalid_argument("graded_mesh_right: n must be >= 2");
  if (mu < 1.0) throw std::invalid_argument("grading exponent must be >= 1");
  GradedMesh mesh;
  mesh.mu = mu;
  mesh.nodes.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    mesh.nodes[i] = b - (b - a) * std::pow(1.0 - t, mu);
  }
  mesh.nodes[0] = a;
  mesh.nodes[n] = b;
  mesh.validate();
  return mesh;
}

}  // namespace regional
