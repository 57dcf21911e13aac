#include "grasslen/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "grasslen/errors.hpp"

namespace grasslen::io {

json to_json(const Multivector& psi) {
  json terms = json::array();
  const SubsetTable t(psi.m(), psi.n());
  for (std::size_t r = 0; r < t.size(); ++r) {
    const Scalar c = psi[r];
    if (c == Scalar{}) continue;
    json idx = json::array();
    for (auto v : t.members(r)) idx.push_back(static_cast<int>(v) + 1);
    // + 0.0 turns a negative zero into a plain zero
    terms.push_back(json::array({idx, c.real() + 0.0, c.imag() + 0.0}));
  }
  return {{"m", psi.m()},
          {"n", psi.n()},
          {"field", psi.field() == Field::Real ? "R" : "C"},
          {"terms", std::move(terms)}};
}

std::string serialize(const Multivector& psi) { return to_json(psi).dump() + "\n"; }

namespace {

int require_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return doc[key].get<int>();
}

} // namespace

Multivector from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("multivector document must be a JSON object");
  const int m = require_int(doc, "m");
  const int n = require_int(doc, "n");
  if (m < 0 || m > kMaxDim) throw ParseError("m must lie in [0, 64]");
  if (n < 0 || n > m) throw ParseError("n must lie in [0, m]");
  Ordinal count = 0;
  try {
    count = binomial(m, n);
  } catch (const std::overflow_error&) {
    throw ParseError("C(m,n) overflows the ordinal type");
  }
  if (count > (Ordinal{1} << 32)) throw ParseError("C(m,n) too large for dense storage");

  if (!doc.contains("field") || !doc["field"].is_string()) throw ParseError("field \"field\" must be \"C\" or \"R\"");
  const std::string f = doc["field"].get<std::string>();
  if (f != "C" && f != "R") throw ParseError("field \"field\" must be \"C\" or \"R\"");
  const Field field = f == "R" ? Field::Real : Field::Complex;

  if (!doc.contains("terms") || !doc["terms"].is_array()) throw ParseError("field \"terms\" must be an array");
  std::vector<Scalar> coeffs(static_cast<std::size_t>(count));
  std::set<Ordinal> seen;
  for (const auto& entry : doc["terms"]) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_array() || !entry[1].is_number() ||
        !entry[2].is_number())
      throw ParseError("each term must be [indices, re, im]");
    if (entry[0].size() != static_cast<std::size_t>(n)) throw ParseError("index set has the wrong size");
    std::vector<int> members;
    for (const auto& v : entry[0]) {
      if (!v.is_number_integer()) throw ParseError("indices must be integers");
      members.push_back(v.get<int>());
    }
    Ordinal r = 0;
    try {
      r = subset_rank(SubsetIndex(m, members));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("bad index set: ") + e.what());
    }
    if (!seen.insert(r).second) throw ParseError("duplicate index set");
    const double re = entry[1].get<double>();
    const double im = entry[2].get<double>();
    if (field == Field::Real && im != 0.0) throw ParseError("nonzero imaginary part in a real document");
    coeffs[static_cast<std::size_t>(r)] = {re, im};
  }
  return Multivector(m, n, std::move(coeffs), field);
}

Multivector parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return from_json(doc);
}

json vector_to_json(const VectorM& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(json::array({v(i).real() + 0.0, v(i).imag() + 0.0}));
  return out;
}

json terms_to_json(int m, int n, const std::vector<DecompTerm>& terms) {
  json arr = json::array();
  for (const auto& t : terms) {
    json vecs = json::array();
    for (Eigen::Index k = 0; k < t.factors.cols(); ++k) vecs.push_back(vector_to_json(t.factors.col(k)));
    arr.push_back(std::move(vecs));
  }
  return {{"m", m}, {"n", n}, {"terms", std::move(arr)}};
}

std::vector<DecompTerm> terms_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("terms document must be a JSON object");
  const int m = require_int(doc, "m");
  const int n = require_int(doc, "n");
  if (m < 1 || m > kMaxDim || n < 1 || n > m) throw ParseError("invalid (m, n)");
  if (!doc.contains("terms") || !doc["terms"].is_array()) throw ParseError("field \"terms\" must be an array");
  std::vector<DecompTerm> out;
  for (const auto& t : doc["terms"]) {
    if (!t.is_array() || t.size() != static_cast<std::size_t>(n)) throw ParseError("term must list n vectors");
    DecompTerm term{Eigen::MatrixXcd(m, n)};
    for (int k = 0; k < n; ++k) {
      const auto& v = t[static_cast<std::size_t>(k)];
      if (!v.is_array() || v.size() != static_cast<std::size_t>(m)) throw ParseError("vector must have m entries");
      for (int i = 0; i < m; ++i) {
        const auto& z = v[static_cast<std::size_t>(i)];
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
          throw ParseError("vector entries must be [re, im]");
        term.factors(i, k) = {z[0].get<double>(), z[1].get<double>()};
      }
    }
    out.push_back(std::move(term));
  }
  return out;
}

json to_json(const RankReport& r) {
  json basis = json::array();
  for (const auto& v : r.support_basis) basis.push_back(vector_to_json(v));
  return {{"rank", r.rank}, {"support_basis", std::move(basis)}, {"tol", r.tol}, {"ambiguous", r.ambiguous}};
}

json to_json(const DecomposabilityReport& r) {
  return {{"decomposable", r.decomposable},
          {"plucker_residual", r.plucker_residual},
          {"relative_residual", r.relative_residual},
          {"support_rank", r.support_rank},
          {"rank_agrees", r.rank_agrees}};
}

json to_json(const SchmidtResult& r, int m) {
  return {{"length", r.length},
          {"skew_rank", r.skew_rank},
          {"weights", r.weights},
          {"residual", r.residual},
          {"ambiguous", r.ambiguous},
          {"terms", terms_to_json(m, 2, r.terms)["terms"]}};
}

json to_json(const FitReport& r, int m, int n) {
  return {{"l", r.l},
          {"best_residual", r.best_residual},
          {"sweeps_used", r.sweeps_used},
          {"restart_index", r.restart_index},
          {"restarts_run", r.restarts_run},
          {"discarded_restarts", r.discarded_restarts},
          {"cancellation_ratio", r.cancellation_ratio},
          {"factor_norm_ratio", r.factor_norm_ratio},
          {"diverging", r.diverging},
          {"terms", terms_to_json(m, n, r.terms)["terms"]}};
}

json to_json(const LengthEstimate& e, int m, int n, double tol) {
  json reports = json::array();
  for (const auto& r : e.reports) {
    json j = to_json(r, m, n);
    j.erase("terms");
    reports.push_back(std::move(j));
  }
  json out = {{"numerical_length", e.length ? json(*e.length) : json("exceeds l_max")},
              {"tol", tol},
              {"diverging", e.diverging},
              {"reports", std::move(reports)}};
  return out;
}

json to_json(const SecantReport& r) {
  return {{"m", r.m},
          {"n", r.n},
          {"l", r.l},
          {"affine_rank", r.affine_rank},
          {"projective_dim", r.projective_dim},
          {"expected_dim", r.expected_dim},
          {"defect", r.defect},
          {"trials", r.trials},
          {"tol", r.tol},
          {"seed", r.seed},
          {"ambiguous", r.ambiguous},
          {"certified", r.certified},
          {"modular_rank", r.modular_rank},
          {"prime", r.prime}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

} // namespace grasslen::io
