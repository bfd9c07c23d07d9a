#include "orbispec/spectra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "orbispec/format.hpp"
#include "orbispec/summation.hpp"

namespace orbispec {

LengthSpectrum length_spectrum(const PresentedGroup& g, double n_max, const EnumOptions& opt) {
  auto classes = primitive_hyperbolic_classes(g, n_max, opt);
  LengthSpectrum sp;
  sp.group_id = g.id;
  sp.n_max = n_max;
  const bool exact = g.exact();
  for (const auto& c : classes) {
    std::string key = exact ? to_string(c.rep.iabs_trace()) : shortest_double(c.abs_trace);
    if (sp.lines.empty() || sp.lines.back().trace != key || sp.lines.back().chi != c.chi) {
      SpectrumLine line;
      line.trace = key;
      line.abs_trace = c.abs_trace;
      NormLength nl = norm_and_length_from_abs_trace(c.abs_trace);
      line.norm = nl.norm;
      line.length = nl.length;
      line.chi = c.chi;
      sp.lines.push_back(std::move(line));
    }
    sp.lines.back().multiplicity += 1;
    sp.lines.back().words.push_back(c.normal_form.str(g.presentation));
  }
  // canonical cache form: words within a line in lexicographic order rather
  // than enumeration order
  for (auto& line : sp.lines) std::sort(line.words.begin(), line.words.end());
  return sp;
}

std::string spectrum_cache_path(const std::string& cache_dir, const std::string& group_id,
                                double n_max) {
  std::string key = group_id + "-nmax" + shortest_double(n_max);
  for (auto& ch : key)
    if (!std::isalnum((unsigned char)ch) && ch != '.' && ch != '-' && ch != '_') ch = '_';
  return cache_dir + "/spectrum-" + key + ".json";
}

void save_spectrum(const LengthSpectrum& sp, const std::string& path) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["group"] = sp.group_id;
  j["n_max"] = sp.n_max;
  auto& lines = j["lines"];
  lines = nlohmann::ordered_json::array();
  for (const auto& line : sp.lines) {
    nlohmann::ordered_json lj;
    lj["trace"] = line.trace;
    lj["chi"] = line.chi;
    lj["multiplicity"] = line.multiplicity;
    lj["words"] = line.words;
    lines.push_back(std::move(lj));
  }
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write spectrum cache file " + tmp);
    os << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

LengthSpectrum load_spectrum(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read spectrum cache file " + path);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(is);
  if (!j.contains("schema") || j["schema"].get<int>() != 1)
    throw std::runtime_error("spectrum cache file " + path + " has an unsupported schema");
  LengthSpectrum sp;
  sp.group_id = j["group"].get<std::string>();
  sp.n_max = j["n_max"].get<double>();
  for (const auto& lj : j["lines"]) {
    SpectrumLine line;
    line.trace = lj["trace"].get<std::string>();
    line.chi = lj["chi"].get<int>();
    line.multiplicity = lj["multiplicity"].get<int>();
    line.words = lj["words"].get<std::vector<std::string>>();
    double t = 0.0;
    auto res = std::from_chars(line.trace.data(), line.trace.data() + line.trace.size(), t);
    if (res.ec != std::errc() || res.ptr != line.trace.data() + line.trace.size())
      throw std::runtime_error("spectrum cache file " + path + " has a malformed trace entry");
    line.abs_trace = t;
    NormLength nl = norm_and_length_from_abs_trace(t);
    line.norm = nl.norm;
    line.length = nl.length;
    sp.lines.push_back(std::move(line));
  }
  return sp;
}

LengthSpectrum length_spectrum_cached(const PresentedGroup& g, double n_max,
                                      const std::string& cache_dir, const EnumOptions& opt) {
  std::string path = spectrum_cache_path(cache_dir, g.id, n_max);
  if (std::filesystem::exists(path)) {
    LengthSpectrum sp = load_spectrum(path);
    if (sp.group_id == g.id && sp.n_max == n_max) return sp;
    throw std::runtime_error("spectrum cache file " + path + " does not match its key");
  }
  LengthSpectrum sp = length_spectrum(g, n_max, opt);
  save_spectrum(sp, path);
  return sp;
}

namespace {

// log of the product over classes with norm <= limit, ascending (norm, i)
double log_zeta_up_to(const LengthSpectrum& sp, double s, double limit, const ZetaOptions& opt,
                      long long* factor_count) {
  CompensatedSum acc;
  for (const auto& line : sp.lines) {
    if (line.norm > limit) continue;
    int chi = opt.force_trivial_chi ? 1 : line.chi;
    for (int i = 0; i <= opt.i_max; ++i) {
      double t = (double)chi * std::exp(-(s + (double)i) * line.length);
      acc.add((double)line.multiplicity * std::log1p(-t));
      if (factor_count) *factor_count += line.multiplicity;
    }
  }
  return acc.value();
}

}  // namespace

TruncatedLogZeta selberg_zeta(const LengthSpectrum& sp, double s, const ZetaOptions& opt) {
  if (!(s > 1.0)) throw std::invalid_argument("truncated zeta product requires s > 1");
  TruncatedLogZeta r;
  r.s = s;
  r.n_max = sp.n_max;
  r.i_max = opt.i_max;
  r.log_value = log_zeta_up_to(sp, s, sp.n_max, opt, &r.factor_count);
  r.value = std::exp(r.log_value);
  double half = log_zeta_up_to(sp, s, sp.n_max / 2.0, opt, nullptr);
  r.tail = std::abs(r.log_value - half);
  return r;
}

DetResult det_delta_minus_k(const LengthSpectrum& sp, int k, const ZetaOptions& opt) {
  if (k == 0)
    throw std::invalid_argument(
        "k = 0 requires Z'(1), the zeta derivative at s = 1, not a plain zeta value; only "
        "k >= 1 is supported");
  if (k < 0) throw std::invalid_argument("determinant identity requires k >= 1");
  DetResult r;
  r.k = k;
  r.s = (double)k + 1.0;
  r.zeta = selberg_zeta(sp, r.s, opt);
  return r;
}

FactorizationCheck factorization_check(const LengthSpectrum& cover, const LengthSpectrum& base,
                                       double s, const ZetaOptions& opt) {
  if (cover.n_max != base.n_max)
    throw std::invalid_argument("factorization check needs both spectra at one n_max");
  FactorizationCheck r;
  r.s = s;
  r.n_max = cover.n_max;
  ZetaOptions plain = opt;
  plain.force_trivial_chi = false;
  ZetaOptions trivial = opt;
  trivial.force_trivial_chi = true;

  TruncatedLogZeta zc = selberg_zeta(cover, s, plain);
  TruncatedLogZeta zp = selberg_zeta(base, s, trivial);   // chi = +1 everywhere
  TruncatedLogZeta zm = selberg_zeta(base, s, plain);     // stored parity character
  r.log_cover = zc.log_value;
  r.log_plus = zp.log_value;
  r.log_minus = zm.log_value;
  r.lhs = zc.value;
  r.rhs = std::exp(zp.log_value + zm.log_value);
  r.discrepancy = std::abs(std::expm1(zc.log_value - zp.log_value - zm.log_value));
  r.tail_bound = std::max({zc.tail, zp.tail, zm.tail});
  // control: drop the character from the second factor as well
  r.control_discrepancy = std::abs(std::expm1(zc.log_value - 2.0 * zp.log_value));
  r.control_ratio = r.tail_bound > 0 ? r.control_discrepancy / r.tail_bound : 0.0;
  return r;
}

}  // namespace orbispec
