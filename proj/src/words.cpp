#include "orbispec/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbispec {

int letter_count(Presentation p) { return p == Presentation::FreeRank2 ? 4 : 3; }

std::int8_t inverse_letter(Presentation p, std::int8_t x) {
  if (p == Presentation::FreeRank2) return std::int8_t(x ^ 1);
  return x;  // involutions
}

bool letters_cancel(Presentation p, std::int8_t x, std::int8_t y) {
  return y == inverse_letter(p, x);
}

std::string GroupWord::str(Presentation p) const {
  static const char* free2[] = {"A", "A'", "B", "B'"};
  static const char* invol[] = {"T1", "T2", "T3"};
  std::string s;
  for (auto l : letters) {
    if (!s.empty()) s += ".";
    s += (p == Presentation::FreeRank2) ? free2[l] : invol[l];
  }
  return s.empty() ? "e" : s;
}

GroupWord reduce(Presentation p, GroupWord w) {
  GroupWord out;
  out.letters.reserve(w.letters.size());
  for (auto l : w.letters) {
    if (!out.letters.empty() && letters_cancel(p, out.letters.back(), l))
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

GroupWord concat_reduce(Presentation p, const GroupWord& u, const GroupWord& v) {
  GroupWord w = u;
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return reduce(p, std::move(w));
}

GroupWord inverse_word(Presentation p, const GroupWord& w) {
  GroupWord r;
  r.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back(inverse_letter(p, *it));
  return r;
}

bool is_cyclically_reduced(Presentation p, const GroupWord& w) {
  if (w.letters.size() < 2) return true;
  return !letters_cancel(p, w.letters.back(), w.letters.front());
}

GroupWord cyclically_reduce(Presentation p, GroupWord w) {
  w = reduce(p, std::move(w));
  while (w.letters.size() >= 2 && letters_cancel(p, w.letters.back(), w.letters.front())) {
    w.letters.erase(w.letters.begin());
    w.letters.pop_back();
    w = reduce(p, std::move(w));
  }
  return w;
}

GroupWord minimal_rotation(const GroupWord& w) {
  const std::size_t n = w.letters.size();
  if (n < 2) return w;
  GroupWord best = w;
  GroupWord rot = w;
  for (std::size_t k = 1; k < n; ++k) {
    std::rotate(rot.letters.begin(), rot.letters.begin() + 1, rot.letters.end());
    if (rot.letters < best.letters) best = rot;
  }
  return best;
}

std::size_t cyclic_period(const GroupWord& w) {
  const std::size_t n = w.letters.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (w.letters[i] != w.letters[(i + p) % n]) ok = false;
    if (ok) return p;
  }
  return n;
}

}  // namespace orbispec
