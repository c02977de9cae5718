#include "charspec.hpp"

#include <algorithm>

namespace cdual {

namespace {

std::vector<std::string> split_coords(const std::string& spec) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : spec) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

bool looks_rational(const std::string& s) {
  if (s.empty()) return false;
  size_t i = s[0] == '-' || s[0] == '+' ? 1 : 0;
  if (i >= s.size()) return false;
  bool slash = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '/') {
      if (slash) return false;
      slash = true;
    } else if (!isdigit(static_cast<unsigned char>(s[i]))) {
      return false;
    }
  }
  return true;
}

// exact constant coordinate: p/q or the sugar values
std::optional<Frac> parse_const_exact(const std::string& tok) {
  if (tok == "1") return Frac(0);
  if (tok == "-1") return Frac(1, 2);
  if (tok == "i") return Frac(1, 4);
  if (tok == "-i") return Frac(3, 4);
  if (looks_rational(tok)) return Frac::parse(tok);
  return std::nullopt;
}

Turn parse_const(const std::string& tok) {
  if (auto f = parse_const_exact(tok)) return Turn::from_frac(*f);
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) fail("trailing characters");
    return Turn::real(v);
  } catch (const std::exception&) {
    fail("bad character coordinate '" + tok + "'");
  }
}

CoordPath parse_coord_path(const std::string& tok) {
  CoordPath cp{Frac(0), Frac(0)};
  if (tok.find('t') == std::string::npos) {
    auto f = parse_const_exact(tok);
    if (!f) fail("path coordinate must be an exact rational: '" + tok + "'");
    cp.c0 = *f;
    return cp;
  }
  // forms: t | c1*t | c0+c1*t | c0-c1*t
  std::string body = tok;
  std::string slope;
  size_t tpos = body.find('t');
  if (tpos != body.size() - 1) fail("path coordinate must end in t: '" + tok + "'");
  body.pop_back();  // drop 't'
  if (!body.empty() && body.back() == '*') body.pop_back();
  // split at the last top-level +/- that separates c0 from the slope
  int split = -1;
  for (int i = int(body.size()) - 1; i > 0; --i)
    if (body[i] == '+' || body[i] == '-') { split = i; break; }
  std::string c0s, c1s;
  if (split < 0) {
    c1s = body;
  } else {
    c0s = body.substr(0, split);
    c1s = body.substr(split);  // keeps the sign
  }
  if (c1s.empty() || c1s == "+") c1s = "1";
  else if (c1s == "-") c1s = "-1";
  // affine pieces are plain rationals in turn units (no complex sugar)
  auto parse_signed = [&](std::string s) -> Frac {
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
      neg = s[0] == '-';
      s.erase(0, 1);
    }
    if (!looks_rational(s)) fail("path coordinate piece must be a rational: '" + s + "'");
    Frac f = Frac::parse(s);
    return neg ? -f : f;
  };
  if (!c0s.empty()) cp.c0 = parse_signed(c0s);
  cp.c1 = parse_signed(c1s);
  return cp;
}

}  // namespace

Character parse_character(const CrystalGroup& g, const std::string& spec) {
  auto toks = split_coords(spec);
  if (int(toks.size()) != g.dim)
    fail("character needs " + std::to_string(g.dim) + " coordinates, got " +
         std::to_string(toks.size()));
  Character chi;
  chi.u.reserve(toks.size());
  for (const auto& tok : toks) chi.u.push_back(parse_const(tok));
  return chi;
}

CharacterPath parse_path(const CrystalGroup& g, const std::string& spec,
                         int samples) {
  auto toks = split_coords(spec);
  if (int(toks.size()) != g.dim)
    fail("path needs " + std::to_string(g.dim) + " coordinates, got " +
         std::to_string(toks.size()));
  CharacterPath path;
  path.cg = &g;
  path.samples = samples;
  for (const auto& tok : toks) path.coords.push_back(parse_coord_path(tok));
  return path;
}

}  // namespace cdual
