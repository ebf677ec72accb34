#pragma once

#include <string>
#include <vector>

#include "distgeo/distribution.hpp"
#include "distgeo/frame.hpp"
#include "distgeo/report.hpp"

namespace distgeo {

enum class ConnectionKind { LC, SSM, SSNM, STAT, STAT_DUAL };

std::string to_string(ConnectionKind k);
ConnectionKind connection_kind_from_string(const std::string& s);

struct ConnectionSpec {
  ConnectionKind kind = ConnectionKind::LC;
  VectorField U;  // SSM, SSNM
  Tensor3 K;      // STAT kinds: K(a,b,c) is the E_c coefficient of K(E_a,E_b)

  static ConnectionSpec levi_civita() { return {}; }
  static ConnectionSpec ssm(VectorField U) { return {ConnectionKind::SSM, std::move(U), Tensor3()}; }
  static ConnectionSpec ssnm(VectorField U) { return {ConnectionKind::SSNM, std::move(U), Tensor3()}; }
  static ConnectionSpec stat(Tensor3 K) { return {ConnectionKind::STAT, VectorField(), std::move(K)}; }
  static ConnectionSpec stat_dual(Tensor3 K) { return {ConnectionKind::STAT_DUAL, VectorField(), std::move(K)}; }

  bool semi_symmetric() const { return kind == ConnectionKind::SSM || kind == ConnectionKind::SSNM; }
  bool statistical() const { return kind == ConnectionKind::STAT || kind == ConnectionKind::STAT_DUAL; }
  // K with the sign used by this connection: +K for STAT, -K for STAT_DUAL.
  Tensor3 signed_K() const;
};

// K(a,b,c) = C(a,b,c) / g_c from a totally symmetric cubic form C.
Tensor3 cubic_form_to_K(const FrameManifold& M, const Tensor3& C);

// Throws ShapeMismatch on wrong sizes, AsymmetricCubicForm when g(K(.,.),.) is not symmetric.
void validate_spec(const FrameManifold& M, const ConnectionSpec& spec);

ConnectionTable ambient_connection(const FrameManifold& M, const ConnectionSpec& spec);

// Everything induced on a distribution by one connection spec. Owns a Calculus
// so that all derived expressions of a computation share nodes.
class InducedGeometry {
 public:
  InducedGeometry(const Distribution& dist, const ConnectionSpec& spec);

  const Distribution& dist() const { return dist_; }
  const FrameManifold& manifold() const { return dist_.manifold(); }
  const ConnectionSpec& spec() const { return spec_; }
  const ConnectionTable& lc() const { return manifold().levi_civita(); }
  const ConnectionTable& ambient() const { return amb_; }
  // The dual ambient connection for STAT kinds; LC otherwise.
  const ConnectionTable& dual_ambient() const { return dual_; }
  Calculus& calc() { return calc_; }

  VectorField frame(int i) const { return calc_.frame(static_cast<std::size_t>(i)); }
  VectorField unit(int i) const { return calc_.unit(static_cast<std::size_t>(i)); }
  VectorField on_D(const VectorField& v) const { return project(dist_, v, Side::D); }
  VectorField on_perp(const VectorField& v) const { return project(dist_, v, Side::Dperp); }

  ScalarExpr g(const VectorField& a, const VectorField& b) { return calc_.inner(a, b); }
  ScalarExpr omega(const VectorField& v);
  VectorField bracket(const VectorField& a, const VectorField& b) { return calc_.bracket(a, b); }

  VectorField nabla(const VectorField& x, const VectorField& y) { return calc_.covariant(amb_, x, y); }
  VectorField nabla_lc(const VectorField& x, const VectorField& y) { return calc_.covariant(lc(), x, y); }
  VectorField nabla_dual(const VectorField& x, const VectorField& y) { return calc_.covariant(dual_, x, y); }

  VectorField nabla_D(const VectorField& x, const VectorField& y) { return on_D(nabla(x, y)); }
  VectorField B(const VectorField& x, const VectorField& y) { return on_perp(nabla(x, y)); }
  VectorField B_lc(const VectorField& x, const VectorField& y) { return on_perp(nabla_lc(x, y)); }
  VectorField B_dual(const VectorField& x, const VectorField& y) { return on_perp(nabla_dual(x, y)); }

  // Normal connection pi^perp nabla_X xi: the spec connection for STAT kinds
  // (its own L-bar), Levi-Civita for the others (they coincide on D x D^perp).
  VectorField L_perp(const VectorField& x, const VectorField& xi);
  // Shape operators from a bilinear form: g(A X, E_j) = g(b(X, E_j), xi).
  VectorField A_lc(const VectorField& xi, const VectorField& x);
  VectorField A_stat(const VectorField& xi, const VectorField& x);       // from B-bar
  VectorField A_stat_star(const VectorField& xi, const VectorField& x);  // from B-bar*
  // Semi-symmetric Weingarten operator A_xi - omega(xi) Id.
  VectorField A_tilde(const VectorField& xi, const VectorField& x);

  VectorField curvature(const VectorField& x, const VectorField& y, const VectorField& z) {
    return calc_.curvature(amb_, x, y, z);
  }
  // R^D with the extra bracket term.
  VectorField curvature_D(const VectorField& x, const VectorField& y, const VectorField& z);

 private:
  VectorField shape_from(const VectorField& xi, const VectorField& x, int which);

  Distribution dist_;
  ConnectionSpec spec_;
  Calculus calc_;
  ConnectionTable amb_;
  ConnectionTable dual_;
};

struct InducedPair {
  std::vector<int> indices;
  std::vector<std::vector<VectorField>> nabla_D;  // [a][b] over indices
  std::vector<std::vector<VectorField>> B;
  double closed_form_residual = 0.0;
};

InducedPair induced_pair(const Distribution& dist, const ConnectionSpec& spec);

struct Weingarten {
  std::vector<VectorField> shape;       // A-tilde / A-hat / A-bar applied to E_i, i over indices
  std::vector<VectorField> shape_star;  // A-bar* (statistical kinds)
  std::vector<VectorField> normal;      // L^perp_{E_i} xi
  double closed_form_residual = 0.0;    // closed form against direct projection
  double duality_residual = 0.0;        // statistical pairing
};

Weingarten weingarten(const Distribution& dist, const ConnectionSpec& spec, const VectorField& xi);

// Metric/non-metricity and torsion of the induced connection (SSM, SSNM).
CheckReport verify_characterization(const Distribution& dist, const ConnectionSpec& spec);

}  // namespace distgeo
