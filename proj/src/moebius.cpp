#include "orbispec/moebius.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace orbispec {

// ---------------------------------------------------------------- points

HyperbolicPoint::HyperbolicPoint(cplx v, Model m) : value(v), model(m) {
  if (m == Model::HalfPlane) {
    if (!(v.imag() > 0.0))
      throw std::invalid_argument("half-plane point requires Im z > 0");
  } else {
    if (!(std::abs(v) < 1.0))
      throw std::invalid_argument("disk point requires |u| < 1");
  }
}

HyperbolicPoint HyperbolicPoint::to_halfplane() const {
  if (model == Model::HalfPlane) return *this;
  // inverse Cayley based at i: z = i (1 + u) / (1 - u)
  cplx u = value;
  return HyperbolicPoint(cplx(0.0, 1.0) * (1.0 + u) / (1.0 - u), Model::HalfPlane);
}

HyperbolicPoint HyperbolicPoint::to_disk() const {
  if (model == Model::Disk) return *this;
  cplx z = value;
  return HyperbolicPoint((z - cplx(0.0, 1.0)) / (z + cplx(0.0, 1.0)), Model::Disk);
}

double cosh_distance_m1(cplx z, cplx w) {
  double dx = z.real() - w.real();
  double dy = z.imag() - w.imag();
  return (dx * dx + dy * dy) / (2.0 * z.imag() * w.imag());
}

double acosh1p(double u) {
  if (u < 0) throw std::invalid_argument("acosh1p requires u >= 0");
  return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

double hyperbolic_distance(cplx z, cplx w) {
  if (!(z.imag() > 0.0) || !(w.imag() > 0.0))
    throw std::invalid_argument("hyperbolic_distance requires interior half-plane points");
  return acosh1p(cosh_distance_m1(z, w));
}

double hyperbolic_distance(const HyperbolicPoint& p, const HyperbolicPoint& q) {
  return hyperbolic_distance(p.to_halfplane().value, q.to_halfplane().value);
}

// ---------------------------------------------------------------- MoebiusMap

MoebiusMap::MoebiusMap() = default;

void MoebiusMap::canonicalize() {
  if (exact_) {
    int sign = 0;
    for (int k = 0; k < 4 && sign == 0; ++k)
      if (ia_[k] != 0) sign = ia_[k] > 0 ? 1 : -1;
    if (sign < 0)
      for (auto& v : ia_) v = -v;
    for (int k = 0; k < 4; ++k) da_[k] = (double)ia_[k];
  } else {
    int sign = 0;
    for (int k = 0; k < 4 && sign == 0; ++k)
      if (std::abs(da_[k]) > 1e-12) sign = da_[k] > 0 ? 1 : -1;
    if (sign < 0)
      for (auto& v : da_) v = -v;
  }
}

MoebiusMap MoebiusMap::from_integers(i128 a, i128 b, i128 c, i128 d) {
  i128 det = checked_sub(checked_mul(a, d), checked_mul(b, c));
  if (det != 1)
    throw std::invalid_argument("integer matrix determinant must be exactly 1, got " +
                                orbispec::to_string(det));
  MoebiusMap m;
  m.exact_ = true;
  m.ia_[0] = a;
  m.ia_[1] = b;
  m.ia_[2] = c;
  m.ia_[3] = d;
  m.canonicalize();
  return m;
}

MoebiusMap MoebiusMap::from_reals(double a, double b, double c, double d) {
  double det = a * d - b * c;
  if (std::abs(det - 1.0) > 1e-12)
    throw std::invalid_argument("real matrix determinant must be 1 within 1e-12");
  MoebiusMap m;
  m.exact_ = false;
  m.da_ = {a, b, c, d};
  m.canonicalize();
  return m;
}

MoebiusMap MoebiusMap::identity() { return MoebiusMap(); }

i128 MoebiusMap::ia() const {
  if (!exact_) throw std::logic_error("exact entries requested from a non-exact map");
  return ia_[0];
}
i128 MoebiusMap::ib() const {
  if (!exact_) throw std::logic_error("exact entries requested from a non-exact map");
  return ia_[1];
}
i128 MoebiusMap::ic() const {
  if (!exact_) throw std::logic_error("exact entries requested from a non-exact map");
  return ia_[2];
}
i128 MoebiusMap::id() const {
  if (!exact_) throw std::logic_error("exact entries requested from a non-exact map");
  return ia_[3];
}

MoebiusMap MoebiusMap::operator*(const MoebiusMap& rhs) const {
  MoebiusMap r;
  if (exact_ && rhs.exact_) {
    const i128* x = ia_;
    const i128* y = rhs.ia_;
    r.exact_ = true;
    r.ia_[0] = checked_add(checked_mul(x[0], y[0]), checked_mul(x[1], y[2]));
    r.ia_[1] = checked_add(checked_mul(x[0], y[1]), checked_mul(x[1], y[3]));
    r.ia_[2] = checked_add(checked_mul(x[2], y[0]), checked_mul(x[3], y[2]));
    r.ia_[3] = checked_add(checked_mul(x[2], y[1]), checked_mul(x[3], y[3]));
  } else {
    const auto& x = da_;
    const auto& y = rhs.da_;
    r.exact_ = false;
    r.da_[0] = x[0] * y[0] + x[1] * y[2];
    r.da_[1] = x[0] * y[1] + x[1] * y[3];
    r.da_[2] = x[2] * y[0] + x[3] * y[2];
    r.da_[3] = x[2] * y[1] + x[3] * y[3];
  }
  r.canonicalize();
  return r;
}

MoebiusMap MoebiusMap::inverse() const {
  MoebiusMap r;
  if (exact_) {
    r.exact_ = true;
    r.ia_[0] = ia_[3];
    r.ia_[1] = -ia_[1];
    r.ia_[2] = -ia_[2];
    r.ia_[3] = ia_[0];
  } else {
    r.exact_ = false;
    r.da_ = {da_[3], -da_[1], -da_[2], da_[0]};
  }
  r.canonicalize();
  return r;
}

double MoebiusMap::abs_trace() const { return std::abs(da_[0] + da_[3]); }

i128 MoebiusMap::iabs_trace() const {
  if (!exact_) throw std::logic_error("exact trace requested from a non-exact map");
  return iabs(checked_add(ia_[0], ia_[3]));
}

bool MoebiusMap::operator==(const MoebiusMap& rhs) const {
  if (exact_ && rhs.exact_) {
    for (int k = 0; k < 4; ++k)
      if (ia_[k] != rhs.ia_[k]) return false;
    return true;
  }
  return approx_equal(rhs, 1e-12);
}

bool MoebiusMap::approx_equal(const MoebiusMap& rhs, double tol) const {
  for (int k = 0; k < 4; ++k)
    if (std::abs(da_[k] - rhs.da_[k]) > tol) return false;
  return true;
}

bool MoebiusMap::is_identity(double tol) const {
  if (exact_) return ia_[0] == 1 && ia_[1] == 0 && ia_[2] == 0 && ia_[3] == 1;
  return std::abs(da_[0] - 1.0) <= tol && std::abs(da_[1]) <= tol &&
         std::abs(da_[2]) <= tol && std::abs(da_[3] - 1.0) <= tol;
}

MapClass MoebiusMap::classify(double tol) const {
  if (is_identity(tol)) return MapClass::Identity;
  if (exact_) {
    i128 t = iabs_trace();
    if (t < 2) return MapClass::Elliptic;
    if (t == 2) return MapClass::Parabolic;
    return MapClass::Hyperbolic;
  }
  double t = abs_trace();
  if (std::abs(t - 2.0) <= tol) return MapClass::Parabolic;
  return t < 2.0 ? MapClass::Elliptic : MapClass::Hyperbolic;
}

cplx MoebiusMap::apply(cplx z) const {
  if (!(z.imag() > 0.0))
    throw std::invalid_argument("Moebius action requires an interior point (Im z > 0)");
  return (da_[0] * z + da_[1]) / (da_[2] * z + da_[3]);
}

HyperbolicPoint MoebiusMap::apply(const HyperbolicPoint& p) const {
  if (p.model == Model::HalfPlane) return HyperbolicPoint(apply(p.value), Model::HalfPlane);
  HyperbolicPoint h = p.to_halfplane();
  return HyperbolicPoint(apply(h.value), Model::HalfPlane).to_disk();
}

std::uint64_t MoebiusMap::hash() const {
  if (!exact_) throw std::logic_error("hashing requires the exact lane");
  std::uint64_t h = 0x51ab5e57ed15c0deull;
  for (int k = 0; k < 4; ++k) h = hash_i128(ia_[k], h);
  return h;
}

std::string MoebiusMap::str() const {
  std::ostringstream os;
  if (exact_)
    os << "[[" << orbispec::to_string(ia_[0]) << "," << orbispec::to_string(ia_[1]) << "],["
       << orbispec::to_string(ia_[2]) << "," << orbispec::to_string(ia_[3]) << "]]";
  else
    os << "[[" << da_[0] << "," << da_[1] << "],[" << da_[2] << "," << da_[3] << "]]";
  return os.str();
}

// ---------------------------------------------------------------- spectral data

NormLength norm_and_length_from_abs_trace(double t) {
  if (!(t > 2.0)) throw std::invalid_argument("norm requires |trace| > 2");
  // sqrt(N) = (|tr| + sqrt(tr^2 - 4))/2; length = log N = 2 log sqrt(N)
  double half = t / 2.0;
  double root = std::sqrt(half * half - 1.0);
  double sqrtN = half + root;
  NormLength r;
  r.length = 2.0 * std::log(sqrtN);
  r.norm = sqrtN * sqrtN;
  return r;
}

NormLength norm_and_length(const MoebiusMap& m) {
  if (m.classify() != MapClass::Hyperbolic)
    throw std::invalid_argument("norm_and_length requires a hyperbolic element");
  return norm_and_length_from_abs_trace(m.abs_trace());
}

cplx fixpoint_elliptic(const MoebiusMap& m) {
  if (m.classify() != MapClass::Elliptic)
    throw std::invalid_argument("fixpoint_elliptic requires an elliptic element");
  // c z^2 + (d - a) z - b = 0; elliptic forces c != 0
  double a = m.a(), b = m.b(), c = m.c(), d = m.d();
  (void)b;
  double tr = a + d;
  double disc = 4.0 - tr * tr;  // = -(tr^2 - 4) > 0
  double re = (a - d) / (2.0 * c);
  double im = std::sqrt(disc) / (2.0 * std::abs(c));
  return cplx(re, im);
}

// ---------------------------------------------------------------- disk maps

cplx DiskMap::apply(cplx u) const {
  if (!(std::abs(u) < 1.0))
    throw std::invalid_argument("disk map action requires |u| < 1");
  return (e[0] * u + e[1]) / (e[2] * u + e[3]);
}

bool DiskMap::is_rotation(double tol) const {
  return std::abs(e[1]) <= tol && std::abs(e[2]) <= tol;
}

cplx DiskMap::rotation_multiplier() const {
  if (!is_rotation())
    throw std::invalid_argument("rotation_multiplier requires an off-diagonal-free disk map");
  return e[0] / e[3];
}

CayleyMap::CayleyMap(cplx base) : z0(base) {
  if (!(base.imag() > 0.0)) throw std::invalid_argument("Cayley base point must satisfy Im z0 > 0");
}

cplx CayleyMap::apply(cplx z) const { return (z - z0) / (z - std::conj(z0)); }

cplx CayleyMap::apply_inverse(cplx u) const { return (z0 - std::conj(z0) * u) / (1.0 - u); }

DiskMap CayleyMap::conjugate(const MoebiusMap& m) const {
  // C = [[1, -z0], [1, -conj(z0)]] normalized to det 1
  cplx det = z0 - std::conj(z0);  // 2i Im z0
  cplx s = std::sqrt(det);
  cplx C[4] = {1.0 / s, -z0 / s, 1.0 / s, -std::conj(z0) / s};
  cplx Ci[4] = {C[3], -C[1], -C[2], C[0]};
  cplx M[4] = {m.a(), m.b(), m.c(), m.d()};
  cplx T[4] = {C[0] * M[0] + C[1] * M[2], C[0] * M[1] + C[1] * M[3],
               C[2] * M[0] + C[3] * M[2], C[2] * M[1] + C[3] * M[3]};
  DiskMap r;
  r.e = {T[0] * Ci[0] + T[1] * Ci[2], T[0] * Ci[1] + T[1] * Ci[3],
         T[2] * Ci[0] + T[3] * Ci[2], T[2] * Ci[1] + T[3] * Ci[3]};
  return r;
}

}  // namespace orbispec
