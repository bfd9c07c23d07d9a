#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "orbispec/groups.hpp"

using namespace orbispec;

TEST_CASE("word ball sizes of a free group of rank 2") {
  const auto g = builtin_punctured_torus();
  // 4 * 3^(l-1) reduced words of length l, plus the identity
  CHECK(word_ball(g, 0).size() == 1);
  CHECK(word_ball(g, 1).size() == 5);
  CHECK(word_ball(g, 2).size() == 17);
  CHECK(word_ball(g, 3).size() == 53);
  // identity first (BFS order), exact lane throughout
  const auto ball = word_ball(g, 2);
  CHECK(ball.front().word.empty());
  CHECK(ball.front().map == MoebiusMap::identity());
  for (const auto& e : ball) CHECK(e.map.exact());
}

TEST_CASE("no short relators in either builtin group") {
  CHECK_NOTHROW(verify_no_short_relators(builtin_punctured_torus(), 12));
  CHECK_NOTHROW(verify_no_short_relators(builtin_orbifold_0_1_222(), 8));
}

TEST_CASE("builtin orbifold: involutions, index-2 torus subgroup, area pairing") {
  const auto g = builtin_orbifold_0_1_222();
  REQUIRE(g.letter_maps.size() == 3);
  for (const auto& T : g.letter_maps) {
    CHECK(T.iabs_trace() == 0);  // trace-zero involutions
    CHECK(T * T == MoebiusMap::identity());
  }
  REQUIRE(g.index2_subgroup != nullptr);
  REQUIRE(g.index2_coset_rep.has_value());

  // the chi = +1 part of the orbifold ball is exactly the torus ball:
  // every even word lands in Gamma', every odd word in Gamma' E
  const auto sub = *g.index2_subgroup;
  std::set<std::uint64_t> torus_hashes;
  for (const auto& e : word_ball(sub, 4)) torus_hashes.insert(e.map.hash());
  const auto E = *g.index2_coset_rep;
  int even = 0, odd = 0;
  for (const auto& e : word_ball(g, 4)) {
    if (character_chi(g, e.word) == 1) {
      CHECK(torus_hashes.count(e.map.hash()) == 1);
      ++even;
    } else {
      // odd-coset element times E must land in the torus subgroup;
      // the ball is deep enough to contain every such product here
      CHECK(torus_hashes.count((e.map * E).hash()) == 1);
      ++odd;
    }
  }
  CHECK(even > 1);
  CHECK(odd > 1);
}

TEST_CASE("cusp generators: parabolic, normalized frames") {
  for (const auto& g : {builtin_punctured_torus(), builtin_orbifold_0_1_222()}) {
    REQUIRE(g.cusp.has_value());
    const auto& c = *g.cusp;
    CHECK(c.S.classify() == MapClass::Parabolic);
    // sigma^{-1} S sigma = unit translation by direction
    const auto t = (c.sigma_inv * c.S * c.sigma).entries();
    CHECK(std::abs(t[0] - 1) < 1e-12);
    CHECK(std::abs(t[1] - c.direction) < 1e-12);
    CHECK(std::abs(t[2]) < 1e-12);
    CHECK(std::abs(t[3] - 1) < 1e-12);
    CHECK((c.direction == 1 || c.direction == -1));
  }
  // commutator cusp of the torus: trace -2, translation number 6
  const auto torus = builtin_punctured_torus();
  CHECK(torus.cusp->S.iabs_trace() == 2);
  CHECK_THROWS(build_cusp_frame(MoebiusMap::from_integers(1, 1, 1, 2)));
}

TEST_CASE("squared orbifold cusp generator is conjugate to the torus one") {
  const auto g = builtin_orbifold_0_1_222();
  REQUIRE(g.cusp_alignment.has_value());
  const auto& al = *g.cusp_alignment;
  const auto& sub = *g.index2_subgroup;
  const MoebiusMap S0sq = g.cusp->S * g.cusp->S;
  const MoebiusMap S1e = al.exponent == 1 ? sub.cusp->S : sub.cusp->S.inverse();
  CHECK(S0sq == al.delta * S1e * al.delta.inverse());
  // the breadth-first search lands on the minimal conjugator delta = A^{-1}
  // with exponent -1; the longer B A^{-1} B^{-1} works too and differs from
  // it by one power of S1 (conjugators form a coset of the centralizer <S1>)
  CHECK(al.exponent == -1);
  const auto B = sub.letter_maps[2];
  const auto A = sub.letter_maps[0];
  CHECK(al.delta == A.inverse());
  CHECK(al.delta_word.size() == 1);
  CHECK(al.delta == B * A.inverse() * B.inverse() * sub.cusp->S);
  // delta really lies in the subgroup: its word evaluates to it there
  CHECK(sub.matrix_of(al.delta_word) == al.delta);
}

TEST_CASE("primitive class enumeration on the torus") {
  const auto g = builtin_punctured_torus();
  const auto classes = primitive_hyperbolic_classes(g, 50.0);
  REQUIRE(!classes.empty());

  // smallest norm is N(A) = ((3+sqrt5)/2)^2, realized by |tr| = 3
  const double n_min = std::pow((3.0 + std::sqrt(5.0)) / 2.0, 2);
  CHECK(std::abs(classes.front().norm - n_min) < 1e-12);

  // ascending norms, all primitive, all in range, trace class function
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    CHECK(c.primitive);
    CHECK(c.norm <= 50.0);
    CHECK(c.norm > 1.0);
    if (i > 0) CHECK(classes[i - 1].norm <= c.norm + 1e-12);
    CHECK(std::abs(c.rep.abs_trace() - c.abs_trace) < 1e-12);
    // realize the class by a different cyclic rotation: same trace
    GroupWord rot = c.normal_form;
    if (rot.size() >= 2) {
      std::rotate(rot.letters.begin(), rot.letters.begin() + 1, rot.letters.end());
      CHECK(g.matrix_of(rot).abs_trace() == doctest::Approx(c.abs_trace).epsilon(1e-12));
    }
  }

  // |tr| = 3 comes from the six classes A, B, AB and inverses/mirrors
  const int mult3 = (int)std::count_if(classes.begin(), classes.end(), [&](const auto& c) {
    return std::abs(c.abs_trace - 3.0) < 1e-9;
  });
  CHECK(mult3 == 6);

  // inverse classes are distinct in the free group and appear exactly once each
  std::set<std::vector<std::int8_t>> forms;
  for (const auto& c : classes) forms.insert(c.normal_form.letters);
  CHECK(forms.size() == classes.size());
  for (const auto& c : classes) {
    const auto inv = inverse_class_normal_form(g.presentation, c.normal_form);
    CHECK(forms.count(inv.letters) == 1);
    CHECK(!(inv == c.normal_form));  // no element is conjugate to its inverse here
    // involution: inverse of the inverse is the original
    CHECK(inverse_class_normal_form(g.presentation, inv) == c.normal_form);
  }
}

TEST_CASE("imprimitive powers are excluded by default, included on request") {
  const auto g = builtin_punctured_torus();
  // N(A^2) = N(A)^2 ~ 46.98 <= 50, so A^2 is in range but imprimitive
  const auto prim = primitive_hyperbolic_classes(g, 50.0);
  EnumOptions opt;
  opt.include_imprimitive = true;
  const auto all = primitive_hyperbolic_classes(g, 50.0, opt);
  CHECK(all.size() > prim.size());
  const double n_sq = std::pow((3.0 + std::sqrt(5.0)) / 2.0, 4);  // N(A)^2
  bool found_square = false;
  for (const auto& c : all)
    if (!c.primitive && std::abs(c.norm - n_sq) < 1e-9) found_square = true;
  CHECK(found_square);
  for (const auto& c : prim) CHECK(c.primitive);
}

TEST_CASE("orbifold classes carry the parity character") {
  const auto g = builtin_orbifold_0_1_222();
  const auto classes = primitive_hyperbolic_classes(g, 40.0);
  REQUIRE(!classes.empty());
  int plus = 0, minus = 0;
  for (const auto& c : classes) {
    CHECK((c.chi == 1 || c.chi == -1));
    CHECK(c.chi == character_chi(g, c.normal_form));
    CHECK(c.chi == (c.normal_form.size() % 2 == 0 ? 1 : -1));
    (c.chi == 1 ? plus : minus)++;
  }
  CHECK(plus > 0);
  // smallest odd-character norm is 17 + 12 sqrt 2 (|tr| = 6, odd word length)
  const double n_odd = 17.0 + 12.0 * std::sqrt(2.0);
  const auto first_odd = std::find_if(classes.begin(), classes.end(),
                                      [](const auto& c) { return c.chi == -1; });
  REQUIRE(first_odd != classes.end());
  CHECK(std::abs(first_odd->norm - n_odd) < 1e-9);
  CHECK(minus > 0);
}

TEST_CASE("enumeration cap throws instead of silently truncating") {
  const auto g = builtin_punctured_torus();
  EnumOptions opt;
  opt.max_word_length = 2;
  CHECK_THROWS_AS(primitive_hyperbolic_classes(g, 1e6, opt), std::runtime_error);
}

TEST_CASE("explicit stop length is stable across an increase") {
  const auto g = builtin_punctured_torus();
  EnumOptions a, b;
  a.stop_length = 9;
  b.stop_length = 11;
  const auto ca = primitive_hyperbolic_classes(g, 30.0, a);
  const auto cb = primitive_hyperbolic_classes(g, 30.0, b);
  REQUIRE(ca.size() == cb.size());
  for (std::size_t i = 0; i < ca.size(); ++i)
    CHECK(ca[i].normal_form == cb[i].normal_form);
}

TEST_CASE("cusp coset representatives") {
  for (const auto& g : {builtin_punctured_torus(), builtin_orbifold_0_1_222()}) {
    const auto reps4 = cusp_coset_reps_detailed(g, 4);
    const auto reps6 = cusp_coset_reps_detailed(g, 6);
    CHECK(reps4.size() >= 2);
    CHECK(reps6.size() >= reps4.size());  // nondecreasing in the radius

    // the identity coset is present with depth 0
    const bool has_id = std::any_of(reps6.begin(), reps6.end(), [](const CosetRep& r) {
      return r.depth == 0 && r.g.is_identity();
    });
    CHECK(has_id);

    // no two representatives lie in the same <S> coset: S * rep is never a rep
    const auto& S = g.cusp->S;
    for (const auto& r : reps6) {
      const auto shifted = S * r.g;
      for (const auto& q : reps6) CHECK(!(shifted == q.g));
    }

    // frame rows: the bottom row of sigma^{-1} g sigma determines the
    // Eisenstein term; identity coset row is (0, +-1) -> (c, d) with c = 0
    for (const auto& r : reps6) {
      if (r.depth == 0) {
        CHECK(std::abs(r.frame[2]) < 1e-12);
        CHECK(std::abs(std::abs(r.frame[3]) - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("conjugated copy acts consistently") {
  const auto g = builtin_punctured_torus();
  const auto sigma = MoebiusMap::from_reals(1.3, 0.25, 0.0, 1.0 / 1.3);
  const auto h = conjugate_group(g, sigma);
  CHECK(!h.exact());
  // matrix_of commutes with conjugation
  GroupWord w;
  w.letters = {0, 2, 1, 2};  // A B A^{-1} B
  const auto lhs = h.matrix_of(w);
  const auto rhs = sigma * g.matrix_of(w) * sigma.inverse();
  CHECK(lhs.approx_equal(rhs, 1e-10));
  // cusp data is conjugated along
  REQUIRE(h.cusp.has_value());
  CHECK(h.cusp->S.approx_equal(sigma * g.cusp->S * sigma.inverse(), 1e-10));
}
