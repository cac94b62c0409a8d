#pragma once

// JSON forms of groups, matrix functions, representations and results.
//
//   GroupTable: {"order", "mult", "inv", "identity", "labels"}
//   MatFun:     {"group_id", "n", "values"}   values[g][row][col] = [re, im]
//   UnitaryRep: {"group_id", "dim", "matrices"} with the same matrix encoding
//
// group_id is a constructor spec understood by build_from_spec.

#include <string>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "group.hpp"
#include "lambda.hpp"
#include "matfun.hpp"
#include "rep.hpp"
#include "sqrt.hpp"

namespace godement {

using Json = nlohmann::json;

/// Stored group_id differs from the group the caller expects.
class GroupMismatch : public ShapeMismatch {
public:
    using ShapeMismatch::ShapeMismatch;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw SchemaError("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
    return *it;
}

inline std::size_t as_index(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw SchemaError(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError("complex entries must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(detail::complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j, std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    if (!j.is_array() || j.size() != dim) throw SchemaError("matrix must have " + std::to_string(dim) + " rows");
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != dim)
            throw SchemaError("matrix rows must have " + std::to_string(dim) + " entries");
        for (Eigen::Index k = 0; k < d; ++k) m(i, k) = detail::complex_from_json(row[static_cast<std::size_t>(k)]);
    }
    return m;
}

// ---------------------------------------------------------------------------
// GroupTable

inline Json to_json(const GroupTable& t) {
    return Json{{"order", t.order}, {"mult", t.mult}, {"inv", t.inv}, {"identity", t.identity}, {"labels", t.labels}};
}

/// Parses the table without validating group axioms; see validate_group.
inline GroupTable group_from_json(const Json& j) {
    GroupTable t;
    t.order = detail::as_index(detail::field(j, "order"), "order");
    const Json& mult = detail::field(j, "mult");
    if (!mult.is_array()) throw SchemaError("mult must be an array of rows");
    for (const Json& row : mult) {
        if (!row.is_array()) throw SchemaError("mult rows must be arrays");
        std::vector<Element> r;
        for (const Json& v : row) r.push_back(detail::as_index(v, "mult entry"));
        t.mult.push_back(std::move(r));
    }
    const Json& inv = detail::field(j, "inv");
    if (!inv.is_array()) throw SchemaError("inv must be an array");
    for (const Json& v : inv) t.inv.push_back(detail::as_index(v, "inv entry"));
    t.identity = detail::as_index(detail::field(j, "identity"), "identity");
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw SchemaError("labels must be an array of strings");
        for (const Json& v : j["labels"]) {
            if (!v.is_string()) throw SchemaError("labels must be strings");
            t.labels.push_back(v.get<std::string>());
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// MatFun

inline Json to_json(const MatFun& a) {
    Json values = Json::array();
    for (const auto& m : a.values()) values.push_back(matrix_to_json(m));
    return Json{{"group_id", a.group().id}, {"n", a.dim()}, {"values", std::move(values)}};
}

/// Rebuilds the group from group_id, or checks group_id against `expected`
/// when one is given (throws GroupMismatch on disagreement).
inline MatFun matfun_from_json(const Json& j, const GroupPtr& expected = nullptr) {
    const Json& gid = detail::field(j, "group_id");
    if (!gid.is_string()) throw SchemaError("group_id must be a string");
    GroupPtr group;
    try {
        group = make_group(gid.get<std::string>());
    } catch (const PreconditionError& e) {
        throw SchemaError(std::string("group_id: ") + e.what());
    }
    if (expected) {
        if (!same_group(group, expected))
            throw GroupMismatch("file group '" + gid.get<std::string>() + "' differs from expected '" +
                                expected->id + "'");
        group = expected;
    }
    const std::size_t n = detail::as_index(detail::field(j, "n"), "n");
    if (n == 0) throw SchemaError("n must be >= 1");
    const Json& values = detail::field(j, "values");
    if (!values.is_array() || values.size() != group->order)
        throw SchemaError("values must hold one matrix per group element");
    std::vector<Matrix> mats;
    mats.reserve(group->order);
    for (const Json& m : values) mats.push_back(matrix_from_json(m, n));
    try {
        return MatFun(group, n, std::move(mats));
    } catch (const PreconditionError& e) {
        throw SchemaError(e.what());
    }
}

// ---------------------------------------------------------------------------
// UnitaryRep

inline Json to_json(const UnitaryRep& p) {
    Json mats = Json::array();
    for (const auto& m : p.matrices) mats.push_back(matrix_to_json(m));
    return Json{{"group_id", p.group->id}, {"dim", p.dim}, {"matrices", std::move(mats)}};
}

inline UnitaryRep rep_from_json(const Json& j) {
    const Json& gid = detail::field(j, "group_id");
    if (!gid.is_string()) throw SchemaError("group_id must be a string");
    UnitaryRep p;
    p.group = make_group(gid.get<std::string>());
    p.dim = detail::as_index(detail::field(j, "dim"), "dim");
    const Json& mats = detail::field(j, "matrices");
    if (!mats.is_array() || mats.size() != p.group->order)
        throw SchemaError("matrices must hold one matrix per group element");
    for (const Json& m : mats) p.matrices.push_back(matrix_from_json(m, p.dim));
    return p;
}

// ---------------------------------------------------------------------------
// Results

inline Json to_json(const PDCertificate& c) {
    return Json{{"verdict", to_string(c.verdict)},
                {"min_eigenvalue", c.min_eigenvalue},
                {"hermitian_residual", c.hermitian_residual},
                {"operator_norm", c.operator_norm}};
}

inline Json to_json(const SqrtResult& r) {
    Json j{{"method", to_string(r.method)}, {"residual", r.residual}, {"psi", to_json(r.psi)}};
    if (r.method == SqrtMethod::iterative) {
        j["iterations"] = r.iterations;
        j["monotone_trace"] = r.monotone_trace;
    }
    return j;
}

}  // namespace godement
