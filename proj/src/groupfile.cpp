#include "orbispec/groupfile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "orbispec/format.hpp"

namespace orbispec {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::istringstream ls(raw);
    Line l{number, {}};
    std::string tok;
    while (ls >> tok) l.tokens.push_back(tok);
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

}  // namespace

PresentedGroup parse_group_file(const std::string& text, const std::string& origin) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw std::runtime_error(origin + ": empty group file");

  std::size_t i = 0;
  // header
  {
    const Line& l = lines[i];
    if (l.tokens.size() != 2 || l.tokens[0] != "orbispec-group")
      fail(origin, l.number, "expected header 'orbispec-group <version>'");
    if (l.tokens[1] != "1")
      fail(origin, l.number, "unsupported format version '" + l.tokens[1] + "' (expected 1)");
    ++i;
  }

  PresentedGroup g;
  g.id = "file:" + origin;
  bool have_presentation = false, have_signature = false;
  std::size_t expected_generators = 0;
  struct RawGen {
    std::string name;
    MoebiusMap map;
  };
  std::vector<RawGen> gens;

  for (; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& kw = l.tokens[0];
    if (kw == "presentation") {
      if (have_presentation) fail(origin, l.number, "duplicate presentation line");
      if (l.tokens.size() != 2) fail(origin, l.number, "expected 'presentation <tag>'");
      if (l.tokens[1] == "free-rank-2") {
        g.presentation = Presentation::FreeRank2;
        expected_generators = 2;
      } else if (l.tokens[1] == "involution-product-3") {
        g.presentation = Presentation::InvolutionProduct3;
        expected_generators = 3;
      } else {
        fail(origin, l.number,
             "unknown presentation '" + l.tokens[1] +
                 "' (expected free-rank-2 or involution-product-3)");
      }
      have_presentation = true;
    } else if (kw == "signature") {
      if (have_signature) fail(origin, l.number, "duplicate signature line");
      if (l.tokens.size() < 3) fail(origin, l.number, "expected 'signature <genus> <cusps> [orders...]'");
      try {
        std::vector<int> orders;
        for (std::size_t t = 3; t < l.tokens.size(); ++t)
          orders.push_back((int)parse_int(l.tokens[t]));
        g.signature = Signature((int)parse_int(l.tokens[1]), (int)parse_int(l.tokens[2]),
                                std::move(orders));
        g.signature.validate();
      } catch (const std::exception& e) {
        fail(origin, l.number, std::string("bad signature: ") + e.what());
      }
      have_signature = true;
    } else if (kw == "generator") {
      if (!have_presentation)
        fail(origin, l.number, "presentation line must precede generator lines");
      if (l.tokens.size() != 6)
        fail(origin, l.number, "expected 'generator <name> <a> <b> <c> <d>'");
      const std::string& name = l.tokens[1];
      bool all_int = true;
      for (int t = 2; t < 6; ++t) all_int = all_int && looks_like_integer(l.tokens[t]);
      MoebiusMap m;
      try {
        if (all_int) {
          const long long a = parse_int(l.tokens[2]), b = parse_int(l.tokens[3]),
                          c = parse_int(l.tokens[4]), d = parse_int(l.tokens[5]);
          if ((i128)a * d - (i128)b * c != 1)
            fail(origin, l.number, "generator " + name + " has determinant != 1");
          m = MoebiusMap::from_integers(a, b, c, d);
        } else {
          const double a = parse_double(l.tokens[2]), b = parse_double(l.tokens[3]),
                       c = parse_double(l.tokens[4]), d = parse_double(l.tokens[5]);
          if (std::abs(a * d - b * c - 1.0) > 1e-9)
            fail(origin, l.number, "generator " + name + " has determinant != 1");
          m = MoebiusMap::from_reals(a, b, c, d);
        }
      } catch (const std::runtime_error&) {
        throw;
      } catch (const std::exception& e) {
        fail(origin, l.number, std::string("bad generator entries: ") + e.what());
      }
      gens.push_back({name, m});
    } else {
      fail(origin, l.number, "unknown keyword '" + kw + "'");
    }
  }

  if (!have_presentation) throw std::runtime_error(origin + ": missing presentation line");
  if (gens.size() != expected_generators)
    throw std::runtime_error(origin + ": expected " + std::to_string(expected_generators) +
                             " generators for this presentation, got " +
                             std::to_string(gens.size()));

  if (g.presentation == Presentation::FreeRank2) {
    g.letter_maps = {gens[0].map, gens[0].map.inverse(), gens[1].map, gens[1].map.inverse()};
    g.generator_names = {gens[0].name, gens[1].name};
    g.chi_mode = PresentedGroup::ChiMode::TriviallyPlusOne;
    if (!have_signature) g.signature = Signature(1, 1, {});
  } else {
    for (const auto& rg : gens) {
      MoebiusMap sq = rg.map * rg.map;
      const bool ok = sq.exact() ? (sq == MoebiusMap::identity()) : sq.is_identity(1e-9);
      if (!ok)
        throw std::runtime_error(origin + ": involution relation broken: generator " + rg.name +
                                 " squared is not the identity");
    }
    g.letter_maps = {gens[0].map, gens[1].map, gens[2].map};
    g.generator_names = {gens[0].name, gens[1].name, gens[2].name};
    g.cone_maps = {gens[0].map, gens[1].map, gens[2].map};
    g.chi_mode = PresentedGroup::ChiMode::LetterParity;
    if (!have_signature) g.signature = Signature(0, 1, {2, 2, 2});
  }

  verify_no_short_relators(g, 12);

  // attach cusp data when the standard parabolic candidate exists
  MoebiusMap cand = MoebiusMap::identity();
  if (g.presentation == Presentation::FreeRank2) {
    const MoebiusMap &A = g.letter_maps[0], &B = g.letter_maps[2];
    cand = (A * B * A.inverse() * B.inverse()).inverse();
  } else {
    cand = (g.letter_maps[0] * g.letter_maps[1] * g.letter_maps[2]).inverse();
  }
  if (cand.classify() == MapClass::Parabolic) g.cusp = build_cusp_frame(cand);

  return g;
}

PresentedGroup group_file_loader(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open group file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_file(buf.str(), path);
}

std::string write_group_file(const PresentedGroup& g) {
  std::ostringstream out;
  out << "orbispec-group 1\n";
  out << "presentation "
      << (g.presentation == Presentation::FreeRank2 ? "free-rank-2" : "involution-product-3")
      << "\n";
  out << "signature " << g.signature.genus << " " << g.signature.cusps;
  for (int m : g.signature.cone_orders) out << " " << m;
  out << "\n";
  const auto emit = [&](const std::string& name, const MoebiusMap& m) {
    out << "generator " << name;
    if (m.exact()) {
      out << " " << to_string(m.ia()) << " " << to_string(m.ib()) << " " << to_string(m.ic())
          << " " << to_string(m.id());
    } else {
      out << " " << shortest_double(m.a()) << " " << shortest_double(m.b()) << " "
          << shortest_double(m.c()) << " " << shortest_double(m.d());
    }
    out << "\n";
  };
  if (g.presentation == Presentation::FreeRank2) {
    emit(g.generator_names[0], g.letter_maps[0]);
    emit(g.generator_names[1], g.letter_maps[2]);
  } else {
    for (std::size_t j = 0; j < 3; ++j) emit(g.generator_names[j], g.letter_maps[j]);
  }
  return out.str();
}

}  // namespace orbispec
