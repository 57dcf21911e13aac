#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "grasslen/decomp_rank.hpp"
#include "grasslen/length_fit.hpp"
#include "grasslen/multivector.hpp"
#include "grasslen/secant.hpp"

namespace grasslen::io {

using nlohmann::json;

/// Multivector document:
///   {"m": 4, "n": 2, "field": "R", "terms": [[[1, 2], 1.0, 0.0], ...]}
/// Only nonzero coefficients are listed, in lexicographic order.
json to_json(const Multivector& psi);
std::string serialize(const Multivector& psi);

/// Throws ParseError on malformed documents: unsorted or out-of-range
/// indices, duplicate index sets, imaginary parts under "R", or C(m,n)
/// beyond the ordinal type.
Multivector from_json(const json& doc);
Multivector parse(std::string_view text);

/// Sum-of-terms document:
///   {"m": 4, "n": 2, "terms": [[[[re, im], ...m], ...n], ...]}
/// i.e. one factor matrix per term, stored as a list of n vectors.
json terms_to_json(int m, int n, const std::vector<DecompTerm>& terms);
std::vector<DecompTerm> terms_from_json(const json& doc);

json vector_to_json(const VectorM& v);

json to_json(const RankReport& r);
json to_json(const DecomposabilityReport& r);
json to_json(const SchmidtResult& r, int m);
json to_json(const FitReport& r, int m, int n);
json to_json(const LengthEstimate& e, int m, int n, double tol);
json to_json(const SecantReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

} // namespace grasslen::io
