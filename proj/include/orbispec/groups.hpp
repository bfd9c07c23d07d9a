#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbispec/moebius.hpp"
#include "orbispec/signature.hpp"
#include "orbispec/words.hpp"

namespace orbispec {

// Cusp bookkeeping: a primitive parabolic generator S together with the
// scaling map sigma normalizing it to a unit translation,
// sigma^{-1} S sigma = [[1, direction], [0, 1]] with direction = +-1.
struct CuspData {
  MoebiusMap S;
  MoebiusMap sigma;       // float map, sigma(infinity) = fixed point of S
  MoebiusMap sigma_inv;
  int direction = 1;
};

// Builds the scaling frame for a parabolic S: sigma with
// sigma^{-1} S sigma = [[1, +-1], [0, 1]]; throws if S is not parabolic or
// the normalization fails validation.
CuspData build_cusp_frame(const MoebiusMap& S);

// Finitely generated Fuchsian group given by generator matrices and one of
// the two supported presentations.  Exact integer generators feed the exact
// lane throughout (deduplication, traces, conjugacy bookkeeping).
struct PresentedGroup {
  std::string id;
  Signature signature{0, 3, {}};  // placeholder; builtins set their own
  Presentation presentation = Presentation::FreeRank2;

  // one matrix per letter (FreeRank2: A, A^{-1}, B, B^{-1}; involutions: T1,T2,T3)
  std::vector<MoebiusMap> letter_maps;
  std::vector<std::string> generator_names;  // names of the abstract generators

  std::optional<CuspData> cusp;
  std::vector<MoebiusMap> cone_maps;  // elliptic generators (involution case)

  enum class ChiMode { Undefined, TriviallyPlusOne, LetterParity };
  ChiMode chi_mode = ChiMode::Undefined;

  // index-2 sandwich: the orbifold group carries its torus subgroup and the
  // involution E with Gamma = Gamma' + Gamma' E
  std::shared_ptr<const PresentedGroup> index2_subgroup;
  std::optional<MoebiusMap> index2_coset_rep;

  // Alignment between this group's cusp generator and the subgroup's: the
  // two constructions normalize their parabolics independently, so S^2 (the
  // smallest power landing in the subgroup) need not literally equal the
  // subgroup's S'; it is conjugate to S'^{+-1} inside the subgroup, and the
  // conjugator is recorded here (see align_cusp_generators).
  struct CuspAlignment {
    MoebiusMap delta;    // subgroup element with S^2 = delta S'^e delta^{-1}
    GroupWord delta_word;
    int exponent = 1;    // e = +1 or -1
  };
  std::optional<CuspAlignment> cusp_alignment;

  bool exact() const;
  MoebiusMap matrix_of(const GroupWord& w) const;
};

// Built-in groups.
//  - punctured torus: A = [[1,1],[1,2]], B = [[1,-1],[-1,2]], free of rank 2,
//    signature (1;1), cusp generator S1 = (A B A^{-1} B^{-1})^{-1}.
//  - orbifold (0;1;2,2,2): T1 = E, T2 = A E, T3 = B E where E is the
//    trace-zero integer involution found by solving E A E^{-1} = A^{-1},
//    E B E^{-1} = B^{-1}; cusp generator S0 = (T1 T2 T3)^{-1}.
PresentedGroup builtin_punctured_torus();
PresentedGroup builtin_orbifold_0_1_222();

// conjugated copy sigma G sigma^{-1} with float matrices (for frame-independence
// checks); word-level bookkeeping is shared, matrix deduplication is skipped
PresentedGroup conjugate_group(const PresentedGroup& g, const MoebiusMap& sigma);

struct BallEntry {
  GroupWord word;
  MoebiusMap map;
};

// All reduced words of length <= L paired with their matrices, identity
// included, grouped in BFS order (deterministic).  For exact groups the
// entries are deduplicated by sign-canonicalized integer matrices; a
// collision between distinct reduced words means the presentation is not
// faithful and throws.
std::vector<BallEntry> word_ball(const PresentedGroup& g, int L);

// Discreteness/faithfulness scan: verifies no nonempty reduced word of length
// <= L equals +-I and that no two distinct reduced words share a matrix.
// Throws std::runtime_error on violation.
void verify_no_short_relators(const PresentedGroup& g, int L);

struct ConjugacyClassRecord {
  GroupWord normal_form;  // lexicographically minimal cyclic rotation
  MoebiusMap rep;         // matrix of the normal form
  double abs_trace = 0;
  double norm = 1;     // N > 1
  double length = 0;   // log N
  bool primitive = true;
  int chi = 1;         // character value (+1 when no character is defined)
};

struct EnumOptions {
  int max_word_length = 24;         // hard cap; exceeding it throws
  int settle_lengths = 2;           // consecutive lengths adding no class
  int extra_lengths = 2;            // safety margin after settling
  std::optional<int> stop_length;   // explicit override (stability tests)
  bool include_imprimitive = false; // keep proper-power classes in the output
};

// Every primitive hyperbolic conjugacy class with N(gamma) <= n_max, each
// exactly once ({gamma} and {gamma^{-1}} are distinct classes unless a group
// element conjugates one to the other, as happens in the involution group).
// Enumeration walks cyclically reduced words by length until settle_lengths
// consecutive lengths add nothing, then extra_lengths more.
std::vector<ConjugacyClassRecord> primitive_hyperbolic_classes(const PresentedGroup& g,
                                                               double n_max,
                                                               const EnumOptions& opt = {});

// Normal form of the inverse class {gamma^{-1}} of a cyclic normal form;
// lets callers pair {gamma} with {gamma^{-1}} in reports.
GroupWord inverse_class_normal_form(Presentation p, const GroupWord& normal_form);

// sign character: +1 on the torus subgroup, -1 on the other coset
// (letter-length parity in the involution presentation)
int character_chi(const PresentedGroup& g, const GroupWord& w);

// Coset representatives of <S>\Gamma intersected with the word ball of
// radius L, deduplicated by the bottom row of sigma^{-1} gamma sigma up to
// sign (tolerance 1e-9) with a collision audit: rows that collide must differ
// by an exact power of S, anything else throws.
struct CosetRep {
  MoebiusMap g;                      // original-frame element (lowest BFS depth)
  std::array<double, 4> frame;       // sigma^{-1} g sigma, canonical row sign
  int depth = 0;                     // word length of the representative
};
std::vector<CosetRep> cusp_coset_reps_detailed(const PresentedGroup& g, int L);
std::vector<MoebiusMap> cusp_coset_reps(const PresentedGroup& g, int L);

// Finds the subgroup conjugator between the orbifold's squared cusp
// generator and the subgroup's cusp generator: searches the subgroup's word
// ball (radius search_L, BFS order) for the first delta with
// S^2 = delta S'^e delta^{-1}, e in {+1, -1}.  Throws if none is found.
PresentedGroup::CuspAlignment align_cusp_generators(const PresentedGroup& orbifold,
                                                    int search_L);

}  // namespace orbispec
