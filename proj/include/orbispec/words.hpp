#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace orbispec {

// Two presentations are supported:
//  - FreeRank2: free group on two generators; letters 0 = A, 1 = A^{-1},
//    2 = B, 3 = B^{-1}.
//  - InvolutionProduct3: free product Z2 * Z2 * Z2; letters 0,1,2 = T1,T2,T3,
//    each its own inverse.
enum class Presentation { FreeRank2, InvolutionProduct3 };

struct GroupWord {
  std::vector<std::int8_t> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool operator==(const GroupWord& o) const { return letters == o.letters; }
  bool operator<(const GroupWord& o) const { return letters < o.letters; }
  std::string str(Presentation p) const;
};

int letter_count(Presentation p);                       // alphabet size
std::int8_t inverse_letter(Presentation p, std::int8_t x);
bool letters_cancel(Presentation p, std::int8_t x, std::int8_t y);  // x followed by y

GroupWord reduce(Presentation p, GroupWord w);
GroupWord concat_reduce(Presentation p, const GroupWord& u, const GroupWord& v);
GroupWord inverse_word(Presentation p, const GroupWord& w);

// strip cancelling first/last pairs until the word is cyclically reduced
GroupWord cyclically_reduce(Presentation p, GroupWord w);
bool is_cyclically_reduced(Presentation p, const GroupWord& w);

// lexicographically minimal cyclic rotation (conjugacy normal form for
// cyclically reduced words)
GroupWord minimal_rotation(const GroupWord& w);

// smallest period of the cyclic word; the word is primitive iff period == size
std::size_t cyclic_period(const GroupWord& w);

}  // namespace orbispec
