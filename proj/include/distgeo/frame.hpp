#pragma once

#include <memory>
#include <string>
#include <vector>

#include "distgeo/sample_plan.hpp"
#include "distgeo/scalar_expr.hpp"

namespace distgeo {

// Coefficients over the frame E_1..E_m.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::size_t m) : c_(m) {}
  explicit VectorField(std::vector<ScalarExpr> coeffs) : c_(std::move(coeffs)) {}
  static VectorField basis(std::size_t m, std::size_t i, const ScalarExpr& scale = ScalarExpr(1));

  std::size_t dim() const { return c_.size(); }
  ScalarExpr& operator[](std::size_t i) { return c_[i]; }
  const ScalarExpr& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<ScalarExpr>& coeffs() const { return c_; }
  bool is_symbolic_zero() const;

 private:
  std::vector<ScalarExpr> c_;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a);
VectorField operator*(const ScalarExpr& s, const VectorField& v);

// m x m x m table, indexed (i, j, k).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t m) : m_(m), d_(m * m * m) {}
  std::size_t dim() const { return m_; }
  ScalarExpr& operator()(std::size_t i, std::size_t j, std::size_t k) { return d_[(i * m_ + j) * m_ + k]; }
  const ScalarExpr& operator()(std::size_t i, std::size_t j, std::size_t k) const { return d_[(i * m_ + j) * m_ + k]; }

 private:
  std::size_t m_ = 0;
  std::vector<ScalarExpr> d_;
};

using Matrix = std::vector<std::vector<ScalarExpr>>;

// nabla_{E_i} E_j = sum_k gamma(i, j, k) E_k
struct ConnectionTable {
  Tensor3 gamma;
};

class FrameManifold {
 public:
  // Validates the structure (antisymmetry, Jacobi, weight compatibility,
  // nonvanishing metric on the plan) and builds the Levi-Civita table.
  FrameManifold(std::string name, std::vector<std::string> labels, std::vector<ScalarExpr> metric, Tensor3 structure,
                std::vector<ScalarExpr> weights, SamplePlan plan = SamplePlan::standard());

  const std::string& name() const { return name_; }
  std::size_t dim() const { return metric_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const ScalarExpr& metric(std::size_t i) const { return metric_[i]; }
  const std::vector<ScalarExpr>& metric() const { return metric_; }
  const Tensor3& structure() const { return structure_; }
  const ScalarExpr& weight(std::size_t i) const { return weights_[i]; }
  const std::vector<ScalarExpr>& weights() const { return weights_; }
  const SamplePlan& plan() const { return plan_; }
  const ConnectionTable& levi_civita() const { return *lc_; }

  FrameManifold with_plan(const SamplePlan& plan) const;

 private:
  void validate() const;

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<ScalarExpr> metric_;
  Tensor3 structure_;
  std::vector<ScalarExpr> weights_;
  SamplePlan plan_;
  std::shared_ptr<const ConnectionTable> lc_;
};

using ManifoldPtr = std::shared_ptr<const FrameManifold>;

// Frame calculus with a derivative cache. Use one instance per computation so
// repeated subtrees stay shared.
class Calculus {
 public:
  explicit Calculus(const FrameManifold& M);
  const FrameManifold& manifold() const { return M_; }

  ScalarExpr d(const ScalarExpr& phi) { return diff_(phi); }
  ScalarExpr apply(const VectorField& X, const ScalarExpr& phi);  // X(phi)
  ScalarExpr inner(const VectorField& V, const VectorField& W);
  VectorField bracket(const VectorField& V, const VectorField& W);
  VectorField covariant(const ConnectionTable& C, const VectorField& X, const VectorField& Y);
  VectorField curvature(const ConnectionTable& C, const VectorField& X, const VectorField& Y, const VectorField& Z);
  VectorField frame(std::size_t i) const { return VectorField::basis(M_.dim(), i); }
  // E_i / sqrt(g_i)
  VectorField unit(std::size_t i) const { return VectorField::basis(M_.dim(), i, inv_sqrt_[i]); }
  const ScalarExpr& inv_sqrt_metric(std::size_t i) const { return inv_sqrt_[i]; }

 private:
  const FrameManifold& M_;
  Differentiator diff_;
  std::vector<ScalarExpr> inv_sqrt_;
};

ConnectionTable koszul_levi_civita(const FrameManifold& M);
VectorField bracket_general(const FrameManifold& M, const VectorField& V, const VectorField& W);
VectorField covariant(const FrameManifold& M, const ConnectionTable& C, const VectorField& X, const VectorField& Y);
VectorField curvature(const FrameManifold& M, const ConnectionTable& C, const VectorField& X, const VectorField& Y,
                      const VectorField& Z);
ScalarExpr inner(const FrameManifold& M, const VectorField& V, const VectorField& W);
// Ric(E_a, E_b) = sum_k g(R(E_a, Ê_k) E_b, Ê_k) with Ê_k orthonormalized.
Matrix ricci_ambient(const FrameManifold& M, const ConnectionTable& C);
ScalarExpr scalar_ambient(const FrameManifold& M, const ConnectionTable& C);

// Largest coefficient magnitude over the plan.
double max_abs(Sampler& s, const VectorField& v);
double max_abs(const FrameManifold& M, const VectorField& v);

}  // namespace distgeo
