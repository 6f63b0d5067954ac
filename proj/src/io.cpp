#include "nebmap/io.hpp"

#include <cmath>
#include <fstream>

namespace nebmap::io {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw parse_error(message);
}

double finite_number(const json& j) {
    require(j.is_number(), "expected a number");
    const double v = j.get<double>();
    require(std::isfinite(v), "non-finite number in file");
    return v;
}

} // namespace

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    require(j.is_array() && j.size() == 2, "complex number must be a [re, im] pair");
    return cplx(finite_number(j[0]), finite_number(j[1]));
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json& j) {
    require(j.is_array() && !j.empty(), "matrix must be a non-empty array of rows");
    const std::size_t rows = j.size();
    require(j[0].is_array(), "matrix row must be an array");
    const std::size_t cols = j[0].size();
    std::vector<cplx> entries;
    entries.reserve(rows * cols);
    for (const json& row : j) {
        require(row.is_array() && row.size() == cols, "ragged matrix rows");
        for (const json& e : row) entries.push_back(complex_from_json(e));
    }
    return CMatrix(rows, cols, std::move(entries));
}

// ---------------------------------------------------------------------------
// basis

json basis_to_json(const NiceErrorBasis& basis) {
    json out;
    out["dim"] = basis.dim();
    if (basis.is_weyl()) {
        out["group"] = {{"type", "weyl"}, {"n", basis.dim()}};
    } else {
        const IndexGroup& group = basis.group();
        json mul = json::array();
        for (std::size_t g = 0; g < group.order(); ++g) {
            json row = json::array();
            for (std::size_t h = 0; h < group.order(); ++h) row.push_back(group.mul(g, h));
            mul.push_back(std::move(row));
        }
        json labels = json::array();
        for (std::size_t g = 0; g < group.order(); ++g) labels.push_back(group.label(g));
        out["group"] = {{"type", "table"}, {"order", group.order()}, {"mul", mul}, {"labels", labels}};
    }
    json unitaries = json::array();
    for (const CMatrix& u : basis.unitaries()) unitaries.push_back(matrix_to_json(u));
    out["unitaries"] = std::move(unitaries);

    const Cocycle& omega = basis.cocycle();
    json cocycle = json::array();
    for (std::size_t g = 0; g < omega.order(); ++g) {
        json row = json::array();
        for (std::size_t h = 0; h < omega.order(); ++h) row.push_back(complex_to_json(omega(g, h)));
        cocycle.push_back(std::move(row));
    }
    out["cocycle"] = std::move(cocycle);
    return out;
}

BasisPtr basis_from_json(const json& j, double tol) {
    require(j.is_object() && j.contains("dim") && j.contains("group"),
            "basis object needs dim and group");
    const auto dim = j.at("dim").get<std::size_t>();
    const json& group_desc = j.at("group");
    require(group_desc.contains("type"), "group descriptor needs a type");
    const std::string type = group_desc.at("type").get<std::string>();

    if (type == "weyl") {
        require(group_desc.contains("n"), "weyl group descriptor needs n");
        const auto n = group_desc.at("n").get<std::size_t>();
        require(n == dim, "weyl group parameter must match dim");
        return NiceErrorBasis::weyl(n);
    }
    require(type == "table", "unknown group type '" + type + "'");
    require(j.contains("unitaries") && j.contains("cocycle"),
            "table basis needs unitaries and cocycle");

    const auto order = group_desc.at("order").get<std::size_t>();
    require(order == dim * dim, "group order must equal dim^2");
    const json& mul_json = group_desc.at("mul");
    require(mul_json.is_array() && mul_json.size() == order, "group table shape mismatch");
    std::vector<std::size_t> mul;
    mul.reserve(order * order);
    for (const json& row : mul_json) {
        require(row.is_array() && row.size() == order, "group table shape mismatch");
        for (const json& e : row) mul.push_back(e.get<std::size_t>());
    }
    std::vector<std::string> labels;
    if (group_desc.contains("labels")) {
        for (const json& l : group_desc.at("labels")) labels.push_back(l.get<std::string>());
    }

    const json& unitaries_json = j.at("unitaries");
    require(unitaries_json.is_array() && unitaries_json.size() == order,
            "need one unitary per group element");
    std::vector<CMatrix> unitaries;
    unitaries.reserve(order);
    for (const json& u : unitaries_json) {
        CMatrix m = matrix_from_json(u);
        require(m.rows() == dim && m.cols() == dim, "unitary has wrong shape");
        unitaries.push_back(std::move(m));
    }

    const json& cocycle_json = j.at("cocycle");
    require(cocycle_json.is_array() && cocycle_json.size() == order, "cocycle table shape mismatch");
    std::vector<cplx> omega;
    omega.reserve(order * order);
    for (const json& row : cocycle_json) {
        require(row.is_array() && row.size() == order, "cocycle table shape mismatch");
        for (const json& e : row) omega.push_back(complex_from_json(e));
    }

    IndexGroup group;
    try {
        group = IndexGroup::from_table(std::move(mul), std::move(labels));
    } catch (const precondition_error& e) {
        throw parse_error(std::string("invalid group table: ") + e.what());
    }
    BasisPtr basis = NiceErrorBasis::from_components(dim, std::move(group), std::move(unitaries),
                                                     Cocycle(order, std::move(omega)));
    const NebVerification verification = verify_neb(*basis, std::max(tol, 1e-9));
    if (!verification.pass) {
        throw precondition_error("loaded basis fails verification:\n" + verification.to_string());
    }
    return basis;
}

// ---------------------------------------------------------------------------
// map files

json map_to_json(const MapValue& value) {
    json out;
    if (const auto* coeff = std::get_if<CoeffMatrix>(&value)) {
        out["kind"] = "dmatrix";
        out["dim"] = coeff->dim();
        if (coeff->basis->is_weyl()) {
            out["basis"] = {{"type", "weyl"}, {"n", coeff->dim()}};
        } else {
            out["basis"] = {{"type", "table"}, {"neb", basis_to_json(*coeff->basis)}};
        }
        out["data"] = matrix_to_json(coeff->mat);
    } else if (const auto* choi = std::get_if<ChoiMatrix>(&value)) {
        out["kind"] = "choi";
        out["dim"] = choi->dim;
        out["data"] = matrix_to_json(choi->mat);
    } else if (const auto* kraus = std::get_if<KrausSet>(&value)) {
        out["kind"] = "kraus";
        out["dim"] = kraus->dim;
        json ops = json::array();
        for (const CMatrix& op : kraus->ops) ops.push_back(matrix_to_json(op));
        out["data"] = std::move(ops);
    } else {
        const auto& superop = std::get<SuperOp>(value);
        out["kind"] = "superop";
        out["dim"] = superop.dim;
        out["data"] = matrix_to_json(superop.mat);
    }
    return out;
}

MapValue map_from_json(const json& j, double tol) {
    require(j.is_object() && j.contains("kind") && j.contains("dim") && j.contains("data"),
            "map file needs kind, dim and data");
    const std::string kind = j.at("kind").get<std::string>();
    const auto dim = j.at("dim").get<std::size_t>();
    require(dim > 0, "dim must be positive");

    if (kind == "dmatrix") {
        require(j.contains("basis"), "dmatrix file needs a basis descriptor");
        const json& basis_desc = j.at("basis");
        require(basis_desc.contains("type"), "basis descriptor needs a type");
        BasisPtr basis;
        if (basis_desc.at("type").get<std::string>() == "weyl") {
            const auto n = basis_desc.at("n").get<std::size_t>();
            require(n == dim, "basis parameter must match dim");
            basis = NiceErrorBasis::weyl(n);
        } else {
            require(basis_desc.contains("neb"), "table basis descriptor needs an embedded neb");
            basis = basis_from_json(basis_desc.at("neb"), tol);
            require(basis->dim() == dim, "embedded basis dimension mismatch");
        }
        CMatrix mat = matrix_from_json(j.at("data"));
        require(mat.rows() == dim * dim && mat.cols() == dim * dim,
                "dmatrix data must be n^2 x n^2");
        return CoeffMatrix{std::move(basis), std::move(mat)};
    }
    if (kind == "choi" || kind == "superop") {
        CMatrix mat = matrix_from_json(j.at("data"));
        require(mat.rows() == dim * dim && mat.cols() == dim * dim,
                kind + " data must be n^2 x n^2");
        if (kind == "choi") return ChoiMatrix{dim, std::move(mat)};
        return SuperOp{dim, std::move(mat)};
    }
    if (kind == "kraus") {
        const json& data = j.at("data");
        require(data.is_array(), "kraus data must be an array of matrices");
        KrausSet kraus{dim, {}};
        for (const json& op_json : data) {
            CMatrix op = matrix_from_json(op_json);
            require(op.rows() == dim && op.cols() == dim, "kraus operator must be n x n");
            kraus.ops.push_back(std::move(op));
        }
        return kraus;
    }
    throw parse_error("unknown map kind '" + kind + "'");
}

json neb_file_to_json(const NiceErrorBasis& basis) {
    json out = basis_to_json(basis);
    out["kind"] = "neb";
    return out;
}

BasisPtr neb_file_from_json(const json& j, double tol) {
    require(j.is_object() && j.contains("kind"), "neb file needs a kind");
    require(j.at("kind").get<std::string>() == "neb", "file is not a neb file");
    return basis_from_json(j, tol);
}

// ---------------------------------------------------------------------------
// file helpers

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error("invalid JSON in '" + path.string() + "': " + e.what());
    }
    return j;
}

void save_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write '" + path.string() + "'");
    out << j.dump(2) << "\n";
    if (!out) throw parse_error("write failed for '" + path.string() + "'");
}

MapValue load_map(const std::filesystem::path& path, double tol) {
    try {
        return map_from_json(load_json(path), tol);
    } catch (const json::exception& e) {
        throw parse_error("invalid map file '" + path.string() + "': " + e.what());
    }
}

void save_map(const std::filesystem::path& path, const MapValue& value) {
    save_json(path, map_to_json(value));
}

BasisPtr load_neb(const std::filesystem::path& path, double tol) {
    try {
        return neb_file_from_json(load_json(path), tol);
    } catch (const json::exception& e) {
        throw parse_error("invalid neb file '" + path.string() + "': " + e.what());
    }
}

void save_neb(const std::filesystem::path& path, const NiceErrorBasis& basis) {
    save_json(path, neb_file_to_json(basis));
}

CMatrix load_matrix(const std::filesystem::path& path) {
    const json j = load_json(path);
    try {
        if (j.is_array()) return matrix_from_json(j);
        require(j.is_object() && j.contains("data"), "matrix file needs data");
        CMatrix m = matrix_from_json(j.at("data"));
        if (j.contains("dim")) {
            const auto dim = j.at("dim").get<std::size_t>();
            require(m.rows() == dim && m.cols() == dim, "matrix data does not match dim");
        }
        return m;
    } catch (const json::exception& e) {
        throw parse_error("invalid matrix file '" + path.string() + "': " + e.what());
    }
}

json matrix_file_to_json(const CMatrix& m) {
    json out;
    out["kind"] = "matrix";
    out["dim"] = m.rows();
    out["data"] = matrix_to_json(m);
    return out;
}

std::size_t map_dim(const MapValue& value) {
    if (const auto* coeff = std::get_if<CoeffMatrix>(&value)) return coeff->dim();
    if (const auto* choi = std::get_if<ChoiMatrix>(&value)) return choi->dim;
    if (const auto* kraus = std::get_if<KrausSet>(&value)) return kraus->dim;
    return std::get<SuperOp>(value).dim;
}

std::string kind_of(const MapValue& value) {
    if (std::holds_alternative<CoeffMatrix>(value)) return "dmatrix";
    if (std::holds_alternative<ChoiMatrix>(value)) return "choi";
    if (std::holds_alternative<KrausSet>(value)) return "kraus";
    return "superop";
}

} // namespace nebmap::io
