#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "moutard/numeric.hpp"

namespace moutard {

using nlohmann::json;

inline json to_json(const GaussianRational& c) { return {{"re", rational_text(c.re())}, {"im", rational_text(c.im())}}; }

inline GaussianRational gaussian_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_string() || !j["im"].is_string())
    throw ParseError("expected {\"re\": \"a/b\", \"im\": \"c/d\"}");
  return GaussianRational::parse(j["re"].get<std::string>(), j["im"].get<std::string>());
}

/// Terms as [deg_z, deg_zbar, deg_t, coefficient], in ascending monomial order.
inline json to_json(const MPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms())
    terms.push_back({m.z, m.zbar, m.t, to_json(c)});
  return terms;
}

inline MPoly poly_from_json(const json& j) {
  if (!j.is_array())
    throw ParseError("polynomial must be an array of terms");
  MPoly p;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 4 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_number_integer())
      throw ParseError("term must be [deg_z, deg_zbar, deg_t, coefficient]");
    const int a = t[0], b = t[1], k = t[2];
    if (a < 0 || b < 0 || k < 0)
      throw ParseError("negative exponent");
    p.add_term(Monomial::checked(a, b, k), gaussian_from_json(t[3]));
  }
  return p;
}

inline json to_json(const RationalFn& f) {
  json den = json::array();
  for (const auto& g : f.factors())
    den.push_back({{"base", to_json(g.base)}, {"exp", g.exp}});
  return {{"num", to_json(f.num())}, {"den", den}};
}

inline RationalFn rational_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j["den"].is_array())
    throw ParseError("rational function must be {\"num\": ..., \"den\": [...]}");
  RationalFn::Factors fs;
  for (const auto& g : j["den"]) {
    if (!g.contains("base") || !g.contains("exp") || !g["exp"].is_number_integer() || g["exp"].get<int>() < 1)
      throw ParseError("denominator factor must be {\"base\": ..., \"exp\": n >= 1}");
    fs.push_back({poly_from_json(g["base"]), g["exp"].get<int>()});
  }
  return RationalFn(poly_from_json(j["num"]), std::move(fs));
}

inline json to_json(const RationalWave& w) {
  json slots = json::array();
  for (const auto& [k, c] : w.slots())
    slots.push_back({k, to_json(c)});
  return {{"phase", phase_name(w.phase())}, {"slots", slots}};
}

inline RationalWave wave_from_json(const json& j) {
  if (!j.is_object() || !j.contains("phase") || !j.contains("slots"))
    throw ParseError("wave must be {\"phase\": ..., \"slots\": [...]}");
  const std::string name = j["phase"].get<std::string>();
  Phase p;
  if (name == "none")
    p = Phase::none;
  else if (name == "z")
    p = Phase::z;
  else if (name == "z_t")
    p = Phase::z_t;
  else if (name == "zbar")
    p = Phase::zbar;
  else
    throw ParseError("unknown phase '" + name + "'");
  RationalWave w(p);
  for (const auto& s : j["slots"]) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer())
      throw ParseError("slot must be [k, rational]");
    w.add(s[0].get<int>(), rational_from_json(s[1]));
  }
  return w;
}

namespace detail {
inline MPoly holomorphic_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string("seed needs \"") + key + "\" as [[n, coefficient], ...]");
  MPoly p;
  for (const auto& t : j[key]) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || t[0].get<int>() < 0)
      throw ParseError(std::string("bad term in \"") + key + "\"");
    p.add_term(Monomial::checked(t[0].get<int>(), 0, 0), gaussian_from_json(t[1]));
  }
  return p;
}

inline json holomorphic_to_json(const MPoly& p) {
  json out = json::array();
  for (const auto& [m, c] : p.terms())
    out.push_back({m.z, to_json(c)});
  return out;
}
} // namespace detail

/// {"p1": [[n, {"re", "im"}], ...], "p2": [...], "c": {"re", "im"}, "time": bool}
inline SeedPair seed_from_json(const json& j) {
  if (!j.is_object())
    throw ParseError("seed must be a JSON object");
  SeedPair s;
  s.p1 = detail::holomorphic_from_json(j, "p1");
  s.p2 = detail::holomorphic_from_json(j, "p2");
  s.c = j.contains("c") ? gaussian_from_json(j["c"]) : GaussianRational();
  if (!s.c.is_real())
    throw ParseError("c must be real");
  s.time = j.value("time", false);
  return s;
}

inline json to_json(const SeedPair& s) {
  if (!s.p1.is_time_free() || !s.p2.is_time_free() || !s.p1.is_holomorphic() || !s.p2.is_holomorphic())
    throw Error("only t-free holomorphic seeds serialize to the seed format");
  return {{"p1", detail::holomorphic_to_json(s.p1)},
          {"p2", detail::holomorphic_to_json(s.p2)},
          {"c", to_json(s.c)},
          {"time", s.time}};
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline SeedPair read_seed(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open seed file " + path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return seed_from_json(parse_json_text(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("seed: ") + e.what());
  }
}

/// %.17g, which round-trips doubles.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV "x,y,t,re,im", y in the outer loop.
inline void write_grid_csv(std::ostream& out, const GridSpec& grid,
                           const std::function<std::complex<double>(std::complex<double>, double)>& f) {
  grid.validate();
  out << "x,y,t,re,im\n";
  for (int j = 0; j < grid.n; ++j)
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.x(i), y = grid.y(j);
      const auto v = f({x, y}, grid.t);
      out << format_double(x) << ',' << format_double(y) << ',' << format_double(grid.t) << ','
          << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
}

} // namespace moutard
