#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "distgeo/frame.hpp"

namespace distgeo {

// Frame-aligned distribution: D = span{E_i : i in indices}; indices are 0-based.
class Distribution {
 public:
  Distribution(ManifoldPtr manifold, std::vector<int> indices);

  const FrameManifold& manifold() const { return *M_; }
  const ManifoldPtr& manifold_ptr() const { return M_; }
  const std::vector<int>& indices() const { return idx_; }
  const std::vector<int>& complement() const { return perp_; }
  std::size_t rank() const { return idx_.size(); }
  bool contains(int i) const;

 private:
  ManifoldPtr M_;
  std::vector<int> idx_;
  std::vector<int> perp_;
};

enum class Side { D, Dperp };

VectorField project(const Distribution& dist, const VectorField& v, Side side);

// Throws NotTangent / NotNormal when a coefficient outside the side exceeds abs_tol.
void require_tangent(const Distribution& dist, const VectorField& v, const char* what);
void require_normal(const Distribution& dist, const VectorField& v, const char* what);

struct Integrability {
  bool integrable = true;
  std::optional<std::pair<int, int>> witness;
  VectorField witness_normal;  // [E_i,E_j]^perp for the witness
};

Integrability is_integrable(const Distribution& dist);

// pi^perp nabla_X Y for the given connection.
VectorField second_fundamental_form(const Distribution& dist, const ConnectionTable& C, const VectorField& X,
                                    const VectorField& Y);

struct ShapeOperator {
  std::vector<VectorField> shape;   // A_xi E_i, i over dist.indices()
  std::vector<VectorField> normal;  // L^perp_{E_i} xi
};

// g(A_xi X, Y) = g(B(X,Y), xi) with B taken from C.
ShapeOperator shape_operator(const Distribution& dist, const ConnectionTable& C, const VectorField& xi);

// (1/n) sum B(Ê_i, Ê_i) over the orthonormalized D-frame.
VectorField mean_curvature(const Distribution& dist, const ConnectionTable& C);

struct Predicates {
  bool minimal = false;
  bool totally_geodesic = false;
  bool umbilical = false;
  double minimal_residual = 0.0;
  double totally_geodesic_residual = 0.0;
  double umbilical_residual = 0.0;
};

Predicates predicates(const Distribution& dist, const ConnectionTable& C);

}  // namespace distgeo
