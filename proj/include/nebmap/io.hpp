#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "nebmap/linmap.hpp"

namespace nebmap::io {

using json = nlohmann::json;

// JSON exchange format. Complex numbers are two-element arrays [re, im];
// matrices are row-major nested arrays. Map files carry
//   kind: "dmatrix" | "choi" | "kraus" | "superop" | "neb"
//   dim:  n
// dmatrix files carry a basis descriptor, either {"type":"weyl","n":n}
// or {"type":"table","neb":{...}} with an embedded basis object. neb files
// carry group, unitaries and cocycle. Plain matrices (states, operators)
// use kind "matrix" or a bare nested array.

class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

json complex_to_json(const cplx& z);
cplx complex_from_json(const json& j);

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// Basis payload: {"dim":n, "group":{...}, "unitaries":[...], "cocycle":[[...]]}
// For Weyl bases the group descriptor is {"type":"weyl","n":n}; table groups
// carry the full multiplication table. Table bases are re-verified on load.
json basis_to_json(const NiceErrorBasis& basis);
BasisPtr basis_from_json(const json& j, double tol = kDefaultTol);

using MapValue = std::variant<CoeffMatrix, ChoiMatrix, KrausSet, SuperOp>;

json map_to_json(const MapValue& value);
MapValue map_from_json(const json& j, double tol = kDefaultTol);

json neb_file_to_json(const NiceErrorBasis& basis);
BasisPtr neb_file_from_json(const json& j, double tol = kDefaultTol);

// File helpers. Parse errors raise parse_error; shape violations raise
// parse_error as well (malformed file, not a math precondition).
json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const json& j);

MapValue load_map(const std::filesystem::path& path, double tol = kDefaultTol);
void save_map(const std::filesystem::path& path, const MapValue& value);

BasisPtr load_neb(const std::filesystem::path& path, double tol = kDefaultTol);
void save_neb(const std::filesystem::path& path, const NiceErrorBasis& basis);

// Accepts {"kind":"matrix","dim":n,"data":[[...]]} or a bare nested array.
CMatrix load_matrix(const std::filesystem::path& path);
json matrix_file_to_json(const CMatrix& m);

std::size_t map_dim(const MapValue& value);
std::string kind_of(const MapValue& value);

} // namespace nebmap::io
