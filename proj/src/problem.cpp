#include "spinspec/problem.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "spinspec/errors.hpp"

namespace spinspec {

using nlohmann::json;

namespace {

Freq read_freq(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ValidationError("frequency must be an array of three integers");
  Freq k;
  for (int a = 0; a < 3; ++a) {
    if (!j[a].is_number_integer()) throw ValidationError("frequency components must be integers");
    k[a] = j[a].get<int>();
  }
  return k;
}

double finite(const json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(what + " is not finite");
  return v;
}

Mat2 read_matrix(const json& entry) {
  Mat2 m = Mat2::Zero();
  for (const char* part : {"re", "im"}) {
    if (!entry.contains(part)) continue;
    const json& rows = entry.at(part);
    if (!rows.is_array() || rows.size() != 2) throw ValidationError(std::string(part) + " must be a 2x2 array");
    for (int r = 0; r < 2; ++r) {
      if (!rows[r].is_array() || rows[r].size() != 2) throw ValidationError(std::string(part) + " must be 2x2");
      for (int c = 0; c < 2; ++c) {
        const double v = finite(rows[r][c], std::string("matrix entry ") + part);
        m(r, c) += part[0] == 'r' ? cd(v, 0.0) : cd(0.0, v);
      }
    }
  }
  return m;
}

bool is_canonical(const Freq& k) {
  for (int a = 0; a < 3; ++a) {
    if (k[a] != 0) return k[a] > 0;
  }
  return true;
}

constexpr double kClosureTol = 1e-12;

MatrixField read_component(const json& list, int alpha) {
  if (!list.is_array()) throw ValidationError("symbol component must be a list of coefficient entries");
  std::map<Freq, Mat2> stored;
  for (const auto& entry : list) {
    if (!entry.is_object() || !entry.contains("k")) throw ValidationError("coefficient entry needs a \"k\" field");
    const Freq k = read_freq(entry.at("k"));
    if (stored.count(k)) {
      throw ValidationError("duplicate frequency in component " + std::to_string(alpha + 1));
    }
    stored[k] = read_matrix(entry);
  }
  std::map<Freq, Mat2> full;
  for (const auto& [k, m] : stored) {
    const Freq mk = -k;
    const Mat2 partner = m.adjoint();
    if (k == mk) {
      if ((m - partner).cwiseAbs().maxCoeff() > kClosureTol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw ValidationError("zero-frequency coefficient of component " + std::to_string(alpha + 1) +
                              " is not Hermitian");
      }
      full[k] = 0.5 * (m + partner);
      continue;
    }
    if (auto it = stored.find(mk); it != stored.end()) {
      if ((it->second - partner).cwiseAbs().maxCoeff() > kClosureTol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw ValidationError("coefficients at k and -k of component " + std::to_string(alpha + 1) +
                              " are not Hermitian partners");
      }
    }
    full[k] = m;
    full[mk] = partner;
  }
  std::array<TrigPoly::Coefficients, 4> entries;
  for (const auto& [k, m] : full) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        if (m(r, c) != cd(0.0)) entries[2 * r + c][k] = m(r, c);
      }
    }
  }
  return MatrixField(TrigPoly(entries[0]), TrigPoly(entries[1]), TrigPoly(entries[2]), TrigPoly(entries[3]));
}

std::array<MatrixField, 3> read_symbol(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw ValidationError(what + " must list three components");
  return {read_component(j[0], 0), read_component(j[1], 1), read_component(j[2], 2)};
}

TrigPoly read_weight(const json& list) {
  if (!list.is_array()) throw ValidationError("weight must be a list of coefficient entries");
  std::map<Freq, cd> stored;
  for (const auto& entry : list) {
    if (!entry.is_object() || !entry.contains("k")) throw ValidationError("weight entry needs a \"k\" field");
    const Freq k = read_freq(entry.at("k"));
    if (stored.count(k)) throw ValidationError("duplicate frequency in weight");
    const double re = entry.contains("re") ? finite(entry.at("re"), "weight re") : 0.0;
    const double im = entry.contains("im") ? finite(entry.at("im"), "weight im") : 0.0;
    stored[k] = cd(re, im);
  }
  TrigPoly::Coefficients full;
  for (const auto& [k, v] : stored) {
    const Freq mk = -k;
    if (k == mk) {
      if (std::abs(v.imag()) > kClosureTol * std::max(1.0, std::abs(v))) {
        throw ValidationError("constant weight coefficient must be real");
      }
      full[k] = v.real();
      continue;
    }
    if (auto it = stored.find(mk); it != stored.end()) {
      if (std::abs(it->second - std::conj(v)) > kClosureTol * std::max(1.0, std::abs(v))) {
        throw ValidationError("weight coefficients at k and -k are not conjugate");
      }
    }
    full[k] = v;
    full[mk] = std::conj(v);
  }
  return TrigPoly(full);
}

json write_component(const MatrixField& m) {
  std::map<Freq, Mat2> coeffs;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (const auto& [k, v] : m(r, c).coefficients()) {
        if (!is_canonical(k)) continue;
        auto [it, inserted] = coeffs.try_emplace(k, Mat2::Zero());
        it->second(r, c) = v;
      }
    }
  }
  json out = json::array();
  for (const auto& [k, mat] : coeffs) {
    json re = json::array(), im = json::array();
    for (int r = 0; r < 2; ++r) {
      re.push_back({mat(r, 0).real(), mat(r, 1).real()});
      im.push_back({mat(r, 0).imag(), mat(r, 1).imag()});
    }
    out.push_back({{"k", {k[0], k[1], k[2]}}, {"re", re}, {"im", im}});
  }
  return out;
}

json write_symbol(const std::array<MatrixField, 3>& s) {
  return json::array({write_component(s[0]), write_component(s[1]), write_component(s[2])});
}

}  // namespace

PrincipalSymbol standard_pauli_symbol(int charge) {
  const auto& s = pauli_matrices();
  return PrincipalSymbol({MatrixField(s[0]), MatrixField(static_cast<double>(charge) * s[1]), MatrixField(s[2])});
}

PrincipalSymbol ProblemSpec::reference_symbol(int charge) const {
  if (reference) return PrincipalSymbol(*reference);
  return standard_pauli_symbol(charge);
}

void validate(const ProblemSpec& spec) {
  const PrincipalSymbol sym = spec.principal();
  if (spec.reference) PrincipalSymbol ref(*spec.reference);
  int degree = std::max(sym.degree(), spec.weight.degree());
  if (spec.reference) degree = std::max(degree, PrincipalSymbol(*spec.reference).degree());
  if (spec.grid < 2 * degree + 1) {
    throw ValidationError("grid " + std::to_string(spec.grid) + " is below 2*degree+1 = " +
                          std::to_string(2 * degree + 1));
  }
  if (spec.truncation < 0) throw ValidationError("truncation must be nonnegative");
  if (!spec.weight.is_real()) throw ValidationError("weight is not real-valued");
  for (double v : spec.weight.real_on_grid(Grid(spec.grid))) {
    if (!(v > 0.0)) throw ValidationError("weight is not positive on the grid");
  }
}

ProblemSpec parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("problem must be a JSON object");
  if (!j.contains("symbol")) throw ValidationError("problem has no \"symbol\"");
  ProblemSpec spec;
  try {
    spec.name = j.value("name", std::string());
    spec.symbol = read_symbol(j.at("symbol"), "symbol");
    if (j.contains("reference_symbol")) spec.reference = read_symbol(j.at("reference_symbol"), "reference_symbol");
    if (j.contains("weight")) spec.weight = read_weight(j.at("weight"));
    spec.truncation = j.value("truncation", spec.truncation);
    spec.grid = j.value("grid", spec.grid);
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      auto set = [&](const char* key, double& field) {
        if (t.contains(key)) field = finite(t.at(key), std::string("tolerance ") + key);
      };
      set("ellip", spec.tol.ellip);
      set("inv", spec.tol.inv);
      set("frame", spec.tol.frame);
      set("charge", spec.tol.charge);
      set("orth", spec.tol.orth);
      set("lift", spec.tol.lift);
      set("min_norm", spec.tol.min_norm);
      set("pauli", spec.tol.pauli);
      set("chris", spec.tol.chris);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid problem field: ") + e.what());
  }
  validate(spec);
  return spec;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string serialize_problem(const ProblemSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["symbol"] = write_symbol(spec.symbol);
  if (spec.reference) j["reference_symbol"] = write_symbol(*spec.reference);
  json w = json::array();
  for (const auto& [k, v] : spec.weight.coefficients()) {
    if (!is_canonical(k)) continue;
    w.push_back({{"k", {k[0], k[1], k[2]}}, {"re", v.real()}, {"im", v.imag()}});
  }
  j["weight"] = w;
  j["truncation"] = spec.truncation;
  j["grid"] = spec.grid;
  j["tolerances"] = {{"ellip", spec.tol.ellip},   {"inv", spec.tol.inv},       {"frame", spec.tol.frame},
                     {"charge", spec.tol.charge}, {"orth", spec.tol.orth},     {"lift", spec.tol.lift},
                     {"min_norm", spec.tol.min_norm}, {"pauli", spec.tol.pauli}, {"chris", spec.tol.chris}};
  return j.dump(2);
}

}  // namespace spinspec
