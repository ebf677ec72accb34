#pragma once

#include <vector>

#include "distgeo/connections.hpp"
#include "distgeo/report.hpp"

namespace distgeo {

// R^D(X,Y)Z with the extra term -pi^D[[X,Y]^perp, Z], for the induced connection of spec.
VectorField curvature_D(const Distribution& dist, const ConnectionSpec& spec, const VectorField& X,
                        const VectorField& Y, const VectorField& Z);

CheckReport verify_gauss(const Distribution& dist, const ConnectionSpec& spec);
CheckReport verify_codazzi(const Distribution& dist, const ConnectionSpec& spec);
// xi ranges over the D^perp frame (tuple = X, Y, xi [, eta for statistical kinds]).
CheckReport verify_ricci_eq(const Distribution& dist, const ConnectionSpec& spec);

// 1/2 [R^D(E_i,E_j,E_j,E_i) - R^D(E_i,E_j,E_i,E_j)] over the orthonormalized pair (0-based indices).
ScalarExpr sectional(const Distribution& dist, const ConnectionSpec& spec, int i, int j);
// 1/2 sum_{i,j} R^D(E_i,E_j,E_j,E_i) over the orthonormalized D-frame.
ScalarExpr scalar_tau(const Distribution& dist, const ConnectionSpec& spec);

struct RicciD {
  std::vector<int> indices;
  Matrix ric;  // Ric^D(E_a, E_b), unnormalized a, b over indices
  ScalarExpr scalar;  // sum_a Ric^D(E_a,E_a) / g_a
};

RicciD ricci_D(const Distribution& dist, const ConnectionSpec& spec);

struct MixedRicciFlat {
  bool flat = true;
  double max_offdiagonal = 0.0;
};

MixedRicciFlat is_mixed_ricci_flat(const Distribution& dist, const ConnectionSpec& spec);

// R^D(phi X, Y)Z - phi R^D(X,Y)Z over the D-frame, phi = 1 + t^2.
CheckReport tensoriality(const Distribution& dist, const ConnectionSpec& spec);
// R^D(X,Y)Z + R^D(Y,X)Z over the D-frame.
CheckReport antisymmetry(const Distribution& dist, const ConnectionSpec& spec);
// Sectional curvature of each frame plane after rotating the pair by angle.
CheckReport rotation_invariance(const Distribution& dist, const ConnectionSpec& spec, double angle);

// Induced nabla^D, B, shape operators, L^perp, R^D, K^D and s^D of spec minus the
// Levi-Civita ones; for U = 0 or K = 0 every entry should vanish.
CheckReport reduction(const Distribution& dist, const ConnectionSpec& spec, double tol = 1e-12);

// Ambient sectional curvature of the plane (E_i, E_j) for the Levi-Civita connection.
ScalarExpr ambient_sectional(const FrameManifold& M, int i, int j);

}  // namespace distgeo
