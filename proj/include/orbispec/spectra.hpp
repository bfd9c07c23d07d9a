#pragma once

#include <string>
#include <vector>

#include "orbispec/groups.hpp"

namespace orbispec {

// One multiplicity line of the primitive length spectrum: all primitive
// hyperbolic classes sharing the exact |trace| and character value.
struct SpectrumLine {
  std::string trace;   // |trace| as a decimal string (exact for integer groups)
  double abs_trace = 0.0;
  double norm = 1.0;   // N > 1
  double length = 0.0;
  int chi = 1;
  int multiplicity = 0;
  std::vector<std::string> words;  // normal forms, deterministic order
};

struct LengthSpectrum {
  std::string group_id;
  double n_max = 0.0;
  std::vector<SpectrumLine> lines;  // ascending (norm, chi)
};

LengthSpectrum length_spectrum(const PresentedGroup& g, double n_max,
                               const EnumOptions& opt = {});

// On-disk spectrum cache.  Files are keyed by (group id, n_max); loading
// recomputes norm/length from the stored trace strings, so a warm run is
// bit-identical to a cold one.  Writes go through a temp file + rename.
std::string spectrum_cache_path(const std::string& cache_dir, const std::string& group_id,
                                double n_max);
void save_spectrum(const LengthSpectrum& sp, const std::string& path);
LengthSpectrum load_spectrum(const std::string& path);
LengthSpectrum length_spectrum_cached(const PresentedGroup& g, double n_max,
                                      const std::string& cache_dir,
                                      const EnumOptions& opt = {});

struct ZetaOptions {
  int i_max = 30;                 // inner product index runs i = 0..i_max
  bool force_trivial_chi = false; // ignore stored characters (control runs)
};

// Truncated Selberg zeta Z(s) = prod_{classes} prod_i (1 - chi N^{-s-i}),
// accumulated as a compensated sum of log factors in ascending (norm, i)
// order.  An empty spectrum yields Z = 1.  The tail estimate compares
// against the product truncated at n_max/2.
struct TruncatedLogZeta {
  double s = 0.0;
  double n_max = 0.0;
  int i_max = 0;
  double log_value = 0.0;
  double value = 1.0;
  double tail = 0.0;
  long long factor_count = 0;
};

TruncatedLogZeta selberg_zeta(const LengthSpectrum& sp, double s, const ZetaOptions& opt = {});

// Functional determinant of the weight-(-k) Laplacian via det = Z(k + 1),
// valid for k >= 1; k = 0 needs the derivative Z'(1) instead and is rejected.
struct DetResult {
  int k = 0;
  double s = 0.0;  // k + 1
  TruncatedLogZeta zeta;
};
DetResult det_delta_minus_k(const LengthSpectrum& sp, int k, const ZetaOptions& opt = {});

// Character factorization over the index-2 pair: Z(s, cover, trivial) =
// Z(s, base, trivial) * Z(s, base, parity).  The two sides are built from
// independently enumerated spectra truncated at the same n_max; the
// remaining discrepancy |lhs/rhs - 1| comes entirely from truncation and
// must sit below the doubling-tail estimates.  The control discrepancy
// replaces the parity factor by a second trivial factor, which must fail
// loudly.
//
// Note on the truncation error: classes of the base group with character -1
// and norm N appear in the cover's spectrum as their squares, at norm N^2.
// A matched cutoff keeps such a class on the base side while its square is
// still outside the cover's range whenever sqrt(n_max) < N <= n_max, so the
// discrepancy is Sum mult * N^(-2s) over that window.  Doubling n_max at
// desk scale widens the window (the smallest resident class stays, new ones
// enter), so the discrepancy itself is NOT monotone decreasing until n_max
// exceeds the square of the smallest odd-character norm; the doubling-tail
// estimate is the quantity that decreases.
struct FactorizationCheck {
  double s = 0.0;
  double n_max = 0.0;
  double log_cover = 0.0;
  double log_plus = 0.0;
  double log_minus = 0.0;
  double lhs = 1.0;              // Z(s, cover, trivial)
  double rhs = 1.0;              // Z(s, base, trivial) * Z(s, base, parity)
  double discrepancy = 0.0;      // |lhs/rhs - 1|, via expm1 of the log residual
  double tail_bound = 0.0;       // max of the three truncation tails
  double control_discrepancy = 0.0;
  double control_ratio = 0.0;    // control_discrepancy / tail_bound
};

FactorizationCheck factorization_check(const LengthSpectrum& cover, const LengthSpectrum& base,
                                       double s, const ZetaOptions& opt = {});

}  // namespace orbispec
