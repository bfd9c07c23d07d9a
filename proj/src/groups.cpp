#include "orbispec/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace orbispec {

namespace {

using D4 = std::array<double, 4>;

D4 mat_mul(const D4& x, const D4& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}


}  // namespace

CuspData build_cusp_frame(const MoebiusMap& S) {
  if (S.classify() != MapClass::Parabolic)
    throw std::invalid_argument("cusp frame requires a parabolic generator");
  double a = S.a(), c = S.c(), d = S.d();
  MoebiusMap sigma0;
  if (std::abs(c) > 1e-12) {
    double p = (a - d) / (2.0 * c);  // boundary fixed point
    sigma0 = MoebiusMap::from_reals(p, -1.0, 1.0, 0.0);
  } else {
    sigma0 = MoebiusMap::identity();  // already fixes infinity
  }
  MoebiusMap U = sigma0.inverse() * S * sigma0;
  if (std::abs(U.c()) > 1e-9 || std::abs(U.a() - 1.0) > 1e-9 || std::abs(U.d() - 1.0) > 1e-9)
    throw std::runtime_error("cusp normalization failed to produce a translation");
  double t = U.b();
  double s = std::sqrt(std::abs(t));
  MoebiusMap scale = MoebiusMap::from_reals(s, 0.0, 0.0, 1.0 / s);
  CuspData cd;
  cd.S = S;
  cd.sigma = sigma0 * scale;
  cd.sigma_inv = cd.sigma.inverse();
  cd.direction = t > 0 ? 1 : -1;
  MoebiusMap check = cd.sigma_inv * S * cd.sigma;
  MoebiusMap unit = MoebiusMap::from_reals(1.0, (double)cd.direction, 0.0, 1.0);
  if (!check.approx_equal(unit, 1e-10))
    throw std::runtime_error("cusp scaling validation failed (unit translation off by > 1e-10)");
  return cd;
}

bool PresentedGroup::exact() const {
  for (const auto& m : letter_maps)
    if (!m.exact()) return false;
  return true;
}

MoebiusMap PresentedGroup::matrix_of(const GroupWord& w) const {
  MoebiusMap m = MoebiusMap::identity();
  for (auto l : w.letters) m = m * letter_maps[(std::size_t)l];
  return m;
}

PresentedGroup builtin_punctured_torus() {
  PresentedGroup g;
  g.id = "builtin:punctured-torus";
  g.signature = Signature(1, 1, {});
  g.presentation = Presentation::FreeRank2;
  MoebiusMap A = MoebiusMap::from_integers(1, 1, 1, 2);
  MoebiusMap B = MoebiusMap::from_integers(1, -1, -1, 2);
  g.letter_maps = {A, A.inverse(), B, B.inverse()};
  g.generator_names = {"A", "B"};
  g.chi_mode = PresentedGroup::ChiMode::TriviallyPlusOne;

  // commutator A B A^{-1} B^{-1} is parabolic; its inverse generates the cusp
  MoebiusMap K = A * B * A.inverse() * B.inverse();
  if (K.classify() != MapClass::Parabolic)
    throw std::runtime_error("punctured torus commutator is not parabolic");
  MoebiusMap expected = MoebiusMap::from_integers(-1, 0, -6, -1);
  if (!(K == expected))
    throw std::runtime_error("punctured torus commutator has unexpected matrix");
  g.cusp = build_cusp_frame(K.inverse());
  return g;
}

PresentedGroup builtin_orbifold_0_1_222() {
  MoebiusMap A = MoebiusMap::from_integers(1, 1, 1, 2);
  MoebiusMap B = MoebiusMap::from_integers(1, -1, -1, 2);
  MoebiusMap Ai = A.inverse(), Bi = B.inverse();

  // solve for the trace-zero integer involution E with E A E^{-1} = A^{-1}
  // and E B E^{-1} = B^{-1}; E = [[p,q],[r,-p]] with p^2 + q r = -1
  std::vector<MoebiusMap> solutions;
  for (int p = -3; p <= 3; ++p)
    for (int q = -3; q <= 3; ++q)
      for (int r = -3; r <= 3; ++r) {
        if (p * p + q * r != -1) continue;
        MoebiusMap E = MoebiusMap::from_integers(p, q, r, -p);
        if (!(E * A == Ai * E)) continue;
        if (!(E * B == Bi * E)) continue;
        bool dup = false;
        for (const auto& s : solutions)
          if (s == E) dup = true;
        if (!dup) solutions.push_back(E);
      }
  if (solutions.size() != 1)
    throw std::runtime_error("involution constraint solve failed (found " +
                             std::to_string(solutions.size()) + " candidates, expected 1)");
  MoebiusMap E = solutions[0];

  PresentedGroup g;
  g.id = "builtin:orbifold-0-1-222";
  g.signature = Signature(0, 1, {2, 2, 2});
  g.presentation = Presentation::InvolutionProduct3;
  MoebiusMap T1 = E, T2 = A * E, T3 = B * E;
  for (const auto& T : {T1, T2, T3})
    if (T.iabs_trace() != 0)
      throw std::runtime_error("orbifold generator is not a trace-zero involution");
  g.letter_maps = {T1, T2, T3};
  g.generator_names = {"T1", "T2", "T3"};
  g.cone_maps = {T1, T2, T3};
  g.chi_mode = PresentedGroup::ChiMode::LetterParity;

  MoebiusMap S0 = (T1 * T2 * T3).inverse();
  if (S0.classify() != MapClass::Parabolic)
    throw std::runtime_error("orbifold cusp element T1 T2 T3 is not parabolic");
  g.cusp = build_cusp_frame(S0);

  g.index2_subgroup = std::make_shared<PresentedGroup>(builtin_punctured_torus());
  g.index2_coset_rep = E;
  g.cusp_alignment = align_cusp_generators(g, 4);
  return g;
}

PresentedGroup conjugate_group(const PresentedGroup& g, const MoebiusMap& sigma) {
  PresentedGroup out;
  out.id = g.id + "#conjugated";
  out.signature = g.signature;
  out.presentation = g.presentation;
  out.generator_names = g.generator_names;
  out.chi_mode = g.chi_mode;
  MoebiusMap si = sigma.inverse();
  auto conj = [&](const MoebiusMap& m) {
    const auto& x = sigma.entries();
    D4 t = mat_mul(mat_mul({x[0], x[1], x[2], x[3]}, m.entries()), si.entries());
    return MoebiusMap::from_reals(t[0], t[1], t[2], t[3]);
  };
  for (const auto& m : g.letter_maps) out.letter_maps.push_back(conj(m));
  for (const auto& m : g.cone_maps) out.cone_maps.push_back(conj(m));
  if (g.cusp) {
    CuspData cd;
    cd.S = conj(g.cusp->S);
    cd.sigma = sigma * g.cusp->sigma;
    cd.sigma_inv = cd.sigma.inverse();
    cd.direction = g.cusp->direction;
    out.cusp = cd;
  }
  return out;
}

namespace {

// hash-bucketed exact dedup; equal hashes are confirmed by entry comparison
struct ExactDedup {
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;

  // returns index of an existing equal matrix, or npos after inserting
  static constexpr std::size_t npos = (std::size_t)-1;
  std::size_t insert(const std::vector<BallEntry>& store, const MoebiusMap& m,
                     std::size_t index) {
    auto& bucket = buckets[m.hash()];
    for (std::size_t i : bucket)
      if (store[i].map == m) return i;
    bucket.push_back(index);
    return npos;
  }
};

}  // namespace

std::vector<BallEntry> word_ball(const PresentedGroup& g, int L) {
  if (L < 0) throw std::invalid_argument("word ball radius must be >= 0");
  const Presentation p = g.presentation;
  const int nl = letter_count(p);
  const bool exact = g.exact();

  std::vector<BallEntry> out;
  out.push_back({GroupWord{}, MoebiusMap::identity()});
  ExactDedup dedup;
  if (exact) dedup.insert(out, out[0].map, 0);

  std::size_t level_begin = 0, level_end = 1;
  for (int len = 1; len <= L; ++len) {
    for (std::size_t i = level_begin; i < level_end; ++i) {
      // copy: out grows and may reallocate while we append
      GroupWord w = out[i].word;
      MoebiusMap base = out[i].map;
      for (int l = 0; l < nl; ++l) {
        if (!w.letters.empty() && letters_cancel(p, w.letters.back(), (std::int8_t)l)) continue;
        GroupWord wn = w;
        wn.letters.push_back((std::int8_t)l);
        MoebiusMap mn = base * g.letter_maps[(std::size_t)l];
        if (exact) {
          std::size_t hit = dedup.insert(out, mn, out.size());
          if (hit != ExactDedup::npos)
            throw std::runtime_error("word ball dedup collision: reduced words " +
                                     wn.str(p) + " and " + out[hit].word.str(p) +
                                     " share one matrix (presentation not faithful)");
        }
        out.push_back({std::move(wn), mn});
      }
    }
    level_begin = level_end;
    level_end = out.size();
  }
  return out;
}

void verify_no_short_relators(const PresentedGroup& g, int L) {
  const Presentation p = g.presentation;
  const int nl = letter_count(p);
  if (!g.exact()) {
    // float groups: scan against identity with a tolerance, no exact dedup
    std::vector<std::pair<GroupWord, MoebiusMap>> frontier = {{GroupWord{}, MoebiusMap::identity()}};
    for (int len = 1; len <= L; ++len) {
      std::vector<std::pair<GroupWord, MoebiusMap>> next;
      for (auto& [w, m] : frontier)
        for (int l = 0; l < nl; ++l) {
          if (!w.letters.empty() && letters_cancel(p, w.letters.back(), (std::int8_t)l)) continue;
          GroupWord wn = w;
          wn.letters.push_back((std::int8_t)l);
          MoebiusMap mn = m * g.letter_maps[(std::size_t)l];
          if (mn.is_identity(1e-9))
            throw std::runtime_error("relator found: reduced word " + wn.str(p) +
                                     " of length " + std::to_string(len) + " equals the identity");
          next.emplace_back(std::move(wn), mn);
        }
      frontier = std::move(next);
    }
    return;
  }
  // exact lane: full dedup catches both identity words and coincidences
  (void)word_ball(g, L);
}

int character_chi(const PresentedGroup& g, const GroupWord& w) {
  switch (g.chi_mode) {
    case PresentedGroup::ChiMode::TriviallyPlusOne:
      return 1;
    case PresentedGroup::ChiMode::LetterParity:
      return (w.letters.size() % 2 == 0) ? 1 : -1;
    default:
      throw std::invalid_argument("character undefined for group " + g.id);
  }
}

std::vector<ConjugacyClassRecord> primitive_hyperbolic_classes(const PresentedGroup& g,
                                                               double n_max,
                                                               const EnumOptions& opt) {
  if (!(n_max > 1.0)) throw std::invalid_argument("class enumeration requires n_max > 1");
  const Presentation p = g.presentation;
  const int nl = letter_count(p);
  const bool exact = g.exact();

  std::map<std::vector<std::int8_t>, ConjugacyClassRecord> classes;

  // scan all cyclically reduced words of exactly this length; returns the
  // number of classes added
  auto scan_length = [&](int len) -> int {
    int added = 0;
    GroupWord w;
    w.letters.reserve((std::size_t)len);
    std::vector<MoebiusMap> stack;
    stack.reserve((std::size_t)len + 1);
    stack.push_back(MoebiusMap::identity());

    auto rec = [&](auto&& self, int depth) -> void {
      if (depth == len) {
        if (!is_cyclically_reduced(p, w)) return;
        const MoebiusMap& m = stack.back();
        bool hyperbolic;
        if (exact)
          hyperbolic = m.iabs_trace() > 2;
        else
          hyperbolic = m.abs_trace() > 2.0 + 1e-12;
        if (!hyperbolic) return;
        NormLength nlr = norm_and_length(m);
        if (nlr.norm > n_max) return;
        GroupWord nf = minimal_rotation(w);
        auto it = classes.find(nf.letters);
        if (it != classes.end()) return;
        ConjugacyClassRecord rec_out;
        rec_out.normal_form = nf;
        rec_out.rep = g.matrix_of(nf);
        rec_out.abs_trace = rec_out.rep.abs_trace();
        rec_out.norm = nlr.norm;
        rec_out.length = nlr.length;
        rec_out.primitive = cyclic_period(nf) == nf.size();
        rec_out.chi = (g.chi_mode == PresentedGroup::ChiMode::Undefined)
                          ? 1
                          : character_chi(g, nf);
        classes.emplace(nf.letters, std::move(rec_out));
        ++added;
        return;
      }
      for (int l = 0; l < nl; ++l) {
        if (!w.letters.empty() && letters_cancel(p, w.letters.back(), (std::int8_t)l)) continue;
        w.letters.push_back((std::int8_t)l);
        stack.push_back(stack.back() * g.letter_maps[(std::size_t)l]);
        self(self, depth + 1);
        stack.pop_back();
        w.letters.pop_back();
      }
    };
    rec(rec, 0);
    return added;
  };

  auto cap_error = [&]() {
    throw std::runtime_error(
        "class enumeration did not settle: n_max too large for the configured word-length cap (" +
        std::to_string(opt.max_word_length) + ")");
  };

  if (opt.stop_length) {
    for (int len = 1; len <= *opt.stop_length; ++len) {
      if (len > opt.max_word_length) cap_error();
      scan_length(len);
    }
  } else {
    int consecutive_empty = 0;
    int len = 0;
    while (true) {
      ++len;
      if (len > opt.max_word_length) cap_error();
      int added = scan_length(len);
      consecutive_empty = (added == 0) ? consecutive_empty + 1 : 0;
      if (consecutive_empty >= opt.settle_lengths) {
        for (int e = 0; e < opt.extra_lengths; ++e) {
          ++len;
          if (len > opt.max_word_length) cap_error();
          scan_length(len);
        }
        break;
      }
    }
  }

  std::vector<ConjugacyClassRecord> out;
  out.reserve(classes.size());
  for (auto& [k, v] : classes) out.push_back(std::move(v));
  std::sort(out.begin(), out.end(), [](const ConjugacyClassRecord& x, const ConjugacyClassRecord& y) {
    if (x.norm != y.norm) return x.norm < y.norm;
    if (x.chi != y.chi) return x.chi < y.chi;
    return x.normal_form.letters < y.normal_form.letters;
  });
  if (opt.include_imprimitive) return out;
  std::vector<ConjugacyClassRecord> prim;
  prim.reserve(out.size());
  for (auto& r : out)
    if (r.primitive) prim.push_back(std::move(r));
  return prim;
}

GroupWord inverse_class_normal_form(Presentation p, const GroupWord& normal_form) {
  return minimal_rotation(inverse_word(p, normal_form));
}

std::vector<CosetRep> cusp_coset_reps_detailed(const PresentedGroup& g, int L) {
  if (!g.cusp) throw std::invalid_argument("group " + g.id + " has no cusp data");
  const CuspData& cd = *g.cusp;
  auto ball = word_ball(g, L);

  const D4 si = {cd.sigma_inv.a(), cd.sigma_inv.b(), cd.sigma_inv.c(), cd.sigma_inv.d()};
  const D4 sg = {cd.sigma.a(), cd.sigma.b(), cd.sigma.c(), cd.sigma.d()};

  struct Cand {
    D4 frame;
    std::size_t ball_index;
    int depth;
  };
  std::vector<Cand> cands;
  cands.reserve(ball.size());
  constexpr double tol = 1e-9;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    D4 f = mat_mul(mat_mul(si, ball[i].map.entries()), sg);
    // canonical sign of the bottom row
    if (f[2] < -tol || (std::abs(f[2]) <= tol && f[3] < 0))
      f = {-f[0], -f[1], -f[2], -f[3]};
    cands.push_back({f, i, (int)ball[i].word.size()});
  }
  // Cluster rows in two passes (first on c, then on d inside each c-cluster):
  // a single lexicographic sort would let 1e-15 noise in c scramble the d
  // ordering and split rows that agree to machine precision.
  std::sort(cands.begin(), cands.end(),
            [](const Cand& x, const Cand& y) { return x.frame[2] < y.frame[2]; });

  std::vector<CosetRep> reps;
  std::size_t group_start = 0;
  auto flush_group = [&](std::size_t begin, std::size_t end) {
    // audit: all members of one row-group must differ by exact powers of S
    std::size_t best = begin;
    for (std::size_t j = begin + 1; j < end; ++j)
      if (cands[j].ball_index < cands[best].ball_index) best = j;
    const MoebiusMap& gbest = ball[cands[best].ball_index].map;
    for (std::size_t j = begin; j < end; ++j) {
      if (j == best) continue;
      MoebiusMap delta = ball[cands[j].ball_index].map * gbest.inverse();
      // in the frame delta must be [[1, n*direction], [0, 1]]
      D4 df = mat_mul(mat_mul(si, delta.entries()), sg);
      if (df[0] < 0) df = {-df[0], -df[1], -df[2], -df[3]};
      double n_real = df[1] * (double)cd.direction;
      long long n = std::llround(n_real);
      bool ok = std::abs(df[2]) < 1e-6 && std::abs(df[0] - 1.0) < 1e-6 &&
                std::abs(n_real - (double)n) < 1e-6 && n != 0;
      if (ok) {
        // confirm exactly: delta == S^n
        MoebiusMap power = MoebiusMap::identity();
        MoebiusMap base = n > 0 ? cd.S : cd.S.inverse();
        for (long long k = 0; k < std::llabs(n); ++k) power = power * base;
        ok = delta.exact() && power.exact() ? (delta == power) : delta.approx_equal(power, 1e-9);
      }
      if (!ok)
        throw std::runtime_error(
            "cusp coset dedup collision: rows agree to 1e-9 but the coset difference is not a "
            "power of S");
    }
    CosetRep r;
    r.g = ball[cands[best].ball_index].map;
    r.frame = cands[best].frame;
    r.depth = cands[best].depth;
    reps.push_back(std::move(r));
  };

  std::size_t c_start = 0;
  for (std::size_t j = 1; j <= cands.size(); ++j) {
    const bool new_c_cluster =
        j == cands.size() || cands[j].frame[2] - cands[j - 1].frame[2] > tol;
    if (!new_c_cluster) continue;
    std::sort(cands.begin() + c_start, cands.begin() + j, [](const Cand& x, const Cand& y) {
      if (x.frame[3] != y.frame[3]) return x.frame[3] < y.frame[3];
      return x.ball_index < y.ball_index;
    });
    group_start = c_start;
    for (std::size_t k = c_start + 1; k <= j; ++k) {
      const bool new_d_cluster = k == j || cands[k].frame[3] - cands[k - 1].frame[3] > tol;
      if (new_d_cluster) {
        flush_group(group_start, k);
        group_start = k;
      }
    }
    c_start = j;
  }
  return reps;
}

std::vector<MoebiusMap> cusp_coset_reps(const PresentedGroup& g, int L) {
  std::vector<MoebiusMap> out;
  for (auto& r : cusp_coset_reps_detailed(g, L)) out.push_back(r.g);
  return out;
}

PresentedGroup::CuspAlignment align_cusp_generators(const PresentedGroup& orbifold, int search_L) {
  if (!orbifold.cusp) throw std::invalid_argument("group " + orbifold.id + " has no cusp data");
  if (!orbifold.index2_subgroup || !orbifold.index2_subgroup->cusp)
    throw std::invalid_argument("group " + orbifold.id + " has no index-2 subgroup with cusp data");
  const PresentedGroup& sub = *orbifold.index2_subgroup;
  const MoebiusMap S0sq = orbifold.cusp->S * orbifold.cusp->S;
  const MoebiusMap S1 = sub.cusp->S;
  const MoebiusMap S1inv = S1.inverse();
  auto equal = [&](const MoebiusMap& x, const MoebiusMap& y) {
    return x.exact() && y.exact() ? (x == y) : x.approx_equal(y, 1e-9);
  };
  for (const auto& entry : word_ball(sub, search_L)) {
    const MoebiusMap& d = entry.map;
    MoebiusMap dinv = d.inverse();
    for (int e : {1, -1}) {
      MoebiusMap conj = d * (e == 1 ? S1 : S1inv) * dinv;
      if (equal(conj, S0sq)) {
        PresentedGroup::CuspAlignment al;
        al.delta = d;
        al.delta_word = entry.word;
        al.exponent = e;
        return al;
      }
    }
  }
  throw std::runtime_error("no conjugator with S^2 = delta S'^{+-1} delta^{-1} found in the "
                           "subgroup word ball of radius " +
                           std::to_string(search_L));
}

}  // namespace orbispec
