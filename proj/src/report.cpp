#include "report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace cdual {

using json = nlohmann::ordered_json;

const char* kVersion = "0.1.0";

namespace {

json meta_json(const CrystalGroup& g, const std::string& character,
               std::uint64_t seed) {
  json m;
  m["group"] = g.source_name;
  m["character"] = character;
  m["seed"] = seed;
  m["version"] = kVersion;
  return m;
}

json character_json(const Character& chi) {
  json arr = json::array();
  for (const auto& t : chi.u) {
    json c;
    c["turn"] = t.str();
    c["exact"] = t.exact();
    arr.push_back(c);
  }
  return arr;
}

json orbit_json(const CrystalGroup& g, const Character& chi) {
  OrbitData od = g.orbit_stabilizer(chi);
  json o;
  o["size"] = od.orbit.size();
  json stab = json::array();
  for (int h : od.stabilizer) stab.push_back(g.point.names[h]);
  o["stabilizer"] = stab;
  json trans = json::array();
  for (int d : od.transversal) trans.push_back(g.point.names[d]);
  o["transversal"] = trans;
  if (g.is_builtin_g90 && chi.exact())
    o["type"] = classify_orbit_type_90(g, chi);
  json orbit = json::array();
  for (const auto& c : od.orbit) orbit.push_back(character_json(c));
  o["characters"] = orbit;
  return o;
}

json matrix_json(const CMatrix& m) {
  // row-major flat list of [re, im] pairs; the row length is the rep's dim
  json entries = json::array();
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      double re = m(i, j).real(), im = m(i, j).imag();
      // clear signed zeros so equal runs serialize identically
      if (re == 0.0) re = 0.0;
      if (im == 0.0) im = 0.0;
      entries.push_back(json::array({re, im}));
    }
  return entries;
}

// effective row labels: reference names where they match, else rho<j>
std::vector<std::string> row_labels(const CrystalGroup& g, const DualResult& dual) {
  std::vector<std::string> labels;
  if (g.is_builtin_g90) labels = match_against_reference(g, dual);
  labels.resize(dual.induced.size());
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i].empty()) labels[i] = "rho" + std::to_string(i + 1);
  return labels;
}

// presentation order: by trailing index of the label (pi1 before pi5)
std::vector<size_t> label_order(const std::vector<std::string>& labels) {
  std::vector<size_t> order(labels.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [&](size_t i) {
    const std::string& l = labels[i];
    size_t digits = l.find_last_not_of("0123456789") + 1;
    long n = digits < l.size() ? std::stol(l.substr(digits)) : 0;
    return std::pair<std::string, long>(l.substr(0, digits), n);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t i, size_t j) { return key(i) < key(j); });
  return order;
}

json reps_json(const CrystalGroup& g, const DualResult& dual) {
  auto labels = row_labels(g, dual);
  json arr = json::array();
  for (size_t i : label_order(labels)) {
    const InducedRep& rep = dual.induced[i];
    json r;
    r["label"] = labels[i];
    r["dim"] = rep.dim;
    json gens;
    for (const auto& gen : g.generators)
      gens[gen.name] = matrix_json(rep.eval(gen.g));
    r["generators"] = gens;
    arr.push_back(r);
  }
  return arr;
}

}  // namespace

std::string orbit_report_json(const CrystalGroup& g, const std::string& char_spec,
                              std::uint64_t seed) {
  Character chi = parse_character(g, char_spec);
  json root;
  root["meta"] = meta_json(g, char_spec, seed);
  root["orbit"] = orbit_json(g, chi);
  return root.dump(2) + "\n";
}

std::string irreps_report_json(const CrystalGroup& g, const std::string& char_spec,
                               std::uint64_t seed) {
  Character chi = parse_character(g, char_spec);
  DualResult dual = dual_over_orbit(g, chi, seed);
  json root;
  root["meta"] = meta_json(g, char_spec, seed);
  root["orbit"] = orbit_json(g, chi);
  root["reps"] = reps_json(g, dual);
  return root.dump(2) + "\n";
}

std::string pretty_entry(const cplx& v) {
  double mag = std::abs(v);
  if (mag <= 1e-12) return "0";
  if (std::fabs(mag - 1.0) <= 1e-9) {
    double angle = std::arg(v) / (2.0 * M_PI);
    angle -= std::floor(angle);
    for (std::int64_t q = 1; q <= 96; ++q) {
      double scaled = angle * double(q);
      double nearest = std::llround(scaled);
      if (std::fabs(scaled - nearest) < 1e-9 * q) {
        std::int64_t p = std::int64_t(nearest) % q;
        if (p == 0) return "1";
        if (2 * p == q) return "-1";
        if (4 * p == q) return "i";
        if (4 * p == 3 * q) return "-i";
        return "e(" + Frac(p, q).str() + ")";
      }
    }
  }
  std::ostringstream os;
  os.precision(12);
  os << v.real();
  if (v.imag() >= 0)
    os << "+" << v.imag() << "i";
  else
    os << v.imag() << "i";
  return os.str();
}

std::string irreps_report_pretty(const CrystalGroup& g, const std::string& char_spec,
                                 std::uint64_t seed) {
  Character chi = parse_character(g, char_spec);
  DualResult dual = dual_over_orbit(g, chi, seed);
  auto labels = row_labels(g, dual);

  std::ostringstream os;
  OrbitData od = g.orbit_stabilizer(chi);
  os << "character " << chi.str() << "  orbit " << od.orbit.size() << "  stabilizer {";
  for (size_t i = 0; i < od.stabilizer.size(); ++i)
    os << (i ? " " : "") << g.point.names[od.stabilizer[i]];
  os << "}";
  if (g.is_builtin_g90 && chi.exact())
    os << "  type " << classify_orbit_type_90(g, chi);
  os << "\n";
  for (size_t i : label_order(labels)) {
    os << "\n" << labels[i] << "  (dim " << dual.induced[i].dim << ")\n";
    for (const auto& gen : g.generators) {
      CMatrix m = dual.induced[i].eval(gen.g);
      os << "  " << gen.name << ":\n";
      for (int r = 0; r < m.rows; ++r) {
        os << "    [";
        for (int c = 0; c < m.cols; ++c) os << (c ? ", " : "") << pretty_entry(m(r, c));
        os << "]\n";
      }
    }
  }
  return os.str();
}

std::string limit_report_json(const CrystalGroup& g, const std::string& preset_or_path,
                              int branch_label, std::uint64_t seed, int samples,
                              bool with_unitary) {
  bool is_preset = false;
  for (const auto& p : g90_presets())
    if (p.name == preset_or_path) is_preset = true;
  CharacterPath path = is_preset ? preset_path(g, preset_or_path, samples)
                                 : parse_path(g, preset_or_path, samples);

  int branch = resolve_branch_label(path, branch_label, seed);
  DecompositionReport dr = decompose_limit(path, branch, seed, with_unitary);
  EntrywiseLimit lim = entrywise_limit(path, branch, seed);

  json root;
  root["meta"] = meta_json(g, preset_or_path, seed);
  json rep;
  if (is_preset) rep["preset"] = preset_or_path;
  rep["branch"] = branch_label;
  rep["samples"] = samples;
  rep["target"] = character_json(dr.target);
  rep["limit_dim"] = dr.limit_dim;
  rep["stabilizer_limit_dim"] = dr.limit_stab_dim;
  std::vector<std::string> clabels;
  for (const auto& c : dr.components) clabels.push_back(c.label);
  json comps = json::array();
  for (size_t i : label_order(clabels)) {
    const auto& c = dr.components[i];
    json cj;
    cj["label"] = c.label;
    cj["dim"] = c.dim;
    cj["induced_dim"] = c.induced_dim;
    cj["multiplicity"] = c.multiplicity;
    comps.push_back(cj);
  }
  rep["components"] = comps;
  rep["residual"] = dr.residual;
  rep["witness_cauchy_tail"] = lim.seq.witness_cauchy_tail;
  rep["entrywise_cauchy_gap"] = lim.cauchy_gap;
  if (with_unitary) {
    rep["leakage"] = dr.leakage;
    rep["block_labels"] = dr.block_labels;
    rep["block_unitary"] = matrix_json(dr.block_unitary);
  }
  root["report"] = rep;
  return root.dump(2) + "\n";
}

}  // namespace cdual
