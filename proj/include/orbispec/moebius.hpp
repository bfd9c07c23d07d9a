#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "orbispec/ints.hpp"

namespace orbispec {

using cplx = std::complex<double>;

enum class MapClass { Identity, Elliptic, Parabolic, Hyperbolic };
enum class Model { HalfPlane, Disk };

// A point of the hyperbolic plane in either the upper half-plane model
// (Im z > 0) or the unit-disk model (|u| < 1).  The model constraint is
// enforced strictly at construction.
struct HyperbolicPoint {
  cplx value;
  Model model = Model::HalfPlane;

  HyperbolicPoint(cplx v, Model m);
  HyperbolicPoint to_halfplane() const;  // Cayley map based at i
  HyperbolicPoint to_disk() const;
};

// cosh of the hyperbolic distance minus 1, upper half-plane coordinates:
// cosh d - 1 = |z - w|^2 / (2 Im z Im w).  Symmetric in float arithmetic.
double cosh_distance_m1(cplx z, cplx w);
double hyperbolic_distance(cplx z, cplx w);  // half-plane points
double hyperbolic_distance(const HyperbolicPoint& p, const HyperbolicPoint& q);

// stable acosh(1+u) for u >= 0
double acosh1p(double u);

// Element of PSL(2,R) as a 2x2 real matrix of determinant 1 modulo +-I.
// Two backends share one type: an exact 128-bit-integer lane (used for group
// element bookkeeping, deduplication and traces) and a double lane (always
// present, used for all point geometry).  The sign ambiguity is fixed by
// canonicalization: the first nonzero entry of (a,b,c,d) is made positive.
class MoebiusMap {
 public:
  MoebiusMap();  // identity, exact

  static MoebiusMap from_integers(i128 a, i128 b, i128 c, i128 d);
  static MoebiusMap from_reals(double a, double b, double c, double d);
  static MoebiusMap identity();

  bool exact() const { return exact_; }

  double a() const { return da_[0]; }
  double b() const { return da_[1]; }
  double c() const { return da_[2]; }
  double d() const { return da_[3]; }
  const std::array<double, 4>& entries() const { return da_; }

  i128 ia() const;  // exact entries; throw std::logic_error if !exact()
  i128 ib() const;
  i128 ic() const;
  i128 id() const;

  MoebiusMap operator*(const MoebiusMap& rhs) const;  // composition
  MoebiusMap inverse() const;

  double trace() const { return da_[0] + da_[3]; }
  double abs_trace() const;
  i128 iabs_trace() const;  // exact lane only

  bool operator==(const MoebiusMap& rhs) const;  // exact lanes: integer equality
  bool approx_equal(const MoebiusMap& rhs, double tol = 1e-12) const;
  bool is_identity(double tol = 1e-12) const;

  MapClass classify(double tol = 1e-12) const;

  // Moebius action (az+b)/(cz+d).  Interior points only; boundary input
  // (where the pole could be hit) is rejected.
  cplx apply(cplx z) const;
  HyperbolicPoint apply(const HyperbolicPoint& p) const;

  std::uint64_t hash() const;  // exact lane only
  std::string str() const;

 private:
  std::array<double, 4> da_{1.0, 0.0, 0.0, 1.0};
  i128 ia_[4] = {1, 0, 0, 1};
  bool exact_ = true;

  void canonicalize();
};

// N solves sqrt(N) + 1/sqrt(N) = |tr|, N > 1; length = log N is the
// translation length of the closed geodesic (2 arccosh(|tr|/2)).
struct NormLength {
  double norm;
  double length;
};
NormLength norm_and_length(const MoebiusMap& m);
NormLength norm_and_length_from_abs_trace(double abs_trace);  // |tr| > 2

// unique fixed point in the open upper half-plane; input must be elliptic
cplx fixpoint_elliptic(const MoebiusMap& m);

// Moebius map of the unit disk (complex 2x2, det 1), produced by conjugating
// a half-plane map with a Cayley map.
struct DiskMap {
  std::array<cplx, 4> e;  // [[a,b],[c,d]]
  cplx apply(cplx u) const;
  bool is_rotation(double tol = 1e-12) const;  // b = c = 0
  cplx rotation_multiplier() const;            // u -> multiplier * u
};

// Cayley map w = (z - z0)/(z - conj(z0)) sending z0 -> 0, H -> D.
struct CayleyMap {
  cplx z0;  // base point, Im z0 > 0

  explicit CayleyMap(cplx base);
  cplx apply(cplx z) const;
  cplx apply_inverse(cplx u) const;
  DiskMap conjugate(const MoebiusMap& m) const;  // C m C^{-1}
};

}  // namespace orbispec
