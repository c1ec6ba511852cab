#include "unifact/json_io.hpp"

namespace unifact {

namespace {

[[noreturn]] void schema_fail(const std::string& what) {
    fail(ErrorCode::SchemaError, what);
}

uint64_t get_uint(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        if (j.contains(key) && j[key].is_number_integer() && j[key].get<int64_t>() >= 0)
            return uint64_t(j[key].get<int64_t>());
        schema_fail(std::string("expected unsigned integer field '") + key + "'");
    }
    return j[key].get<uint64_t>();
}

} // namespace

Json parse_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) schema_fail("input is not valid JSON");
    return j;
}

Json field_to_json(const FiniteField& field) {
    Json j;
    j["p"] = field.p();
    j["k"] = field.k();
    j["modulus"] = field.modulus();
    return j;
}

FiniteField field_from_json(const Json& j) {
    if (!j.is_object()) schema_fail("field must be an object {p, k, modulus?}");
    uint32_t p = uint32_t(get_uint(j, "p"));
    uint32_t k = j.contains("k") ? uint32_t(get_uint(j, "k")) : 1;
    std::optional<std::vector<uint32_t>> modulus;
    if (j.contains("modulus")) {
        if (!j["modulus"].is_array()) schema_fail("modulus must be a coefficient list");
        modulus = j["modulus"].get<std::vector<uint32_t>>();
    }
    return FiniteField::make(p, k, modulus);
}

Json element_to_json(const FieldElement& e) {
    if (e.field().prime_field()) return e.coord(0);
    return e.coords();
}

FieldElement element_from_json(const Json& j, const FiniteField& field) {
    if (j.is_number_integer()) {
        int64_t v = j.get<int64_t>();
        if (v < 0) schema_fail("element value must be nonnegative");
        if (field.prime_field()) {
            if (uint64_t(v) >= field.p()) schema_fail("element value out of range [0, p)");
            return field.scalar(v);
        }
        // allow bare integers in extension fields for prime-subfield values
        if (uint64_t(v) >= field.p()) schema_fail("bare integers must lie in the prime subfield");
        return field.scalar(v);
    }
    if (j.is_array()) {
        std::vector<uint32_t> coords;
        for (const auto& c : j) {
            if (!c.is_number_unsigned() && !c.is_number_integer())
                schema_fail("element coordinates must be integers");
            int64_t v = c.get<int64_t>();
            if (v < 0) schema_fail("element coordinates must be nonnegative");
            coords.push_back(uint32_t(v));
        }
        if (coords.size() != field.k()) schema_fail("element has the wrong coordinate count");
        for (uint32_t c : coords)
            if (c >= field.p()) schema_fail("element coordinate out of range [0, p)");
        return field.from_coords(coords);
    }
    schema_fail("element must be an integer or a coordinate list");
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(element_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = std::move(rows);
    return j;
}

Matrix matrix_from_json(const Json& j, const FiniteField& field) {
    if (!j.is_object() || !j.contains("entries")) schema_fail("matrix must be {rows, cols, entries}");
    int rows = int(get_uint(j, "rows"));
    int cols = int(get_uint(j, "cols"));
    if (rows < 1 || cols < 1 || rows > kMaxMatrixDim || cols > kMaxMatrixDim)
        schema_fail("matrix dimensions out of range");
    const Json& entries = j["entries"];
    if (!entries.is_array() || int(entries.size()) != rows) schema_fail("entry grid has wrong shape");
    Matrix m(field, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!entries[i].is_array() || int(entries[i].size()) != cols)
            schema_fail("entry grid has wrong shape");
        for (int c = 0; c < cols; ++c) m.set(i, c, element_from_json(entries[i][c], field));
    }
    return m;
}

Json group_to_json(const FiniteGroup& g) {
    Json table = Json::array();
    for (int i = 0; i < g.order(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < g.order(); ++j) row.push_back(g.op(i, j));
        table.push_back(std::move(row));
    }
    Json j;
    j["order"] = g.order();
    j["table"] = std::move(table);
    return j;
}

FiniteGroup group_from_json(const Json& j, int order_cap) {
    if (j.is_string()) return catalog_group(j.get<std::string>());
    if (!j.is_object()) schema_fail("group must be an object or a catalog name");
    if (j.contains("catalog")) {
        if (!j["catalog"].is_string()) schema_fail("catalog name must be a string");
        return catalog_group(j["catalog"].get<std::string>());
    }
    if (j.contains("table")) {
        if (!j["table"].is_array()) schema_fail("table must be an array of rows");
        std::vector<std::vector<int>> table;
        for (const auto& row : j["table"]) {
            if (!row.is_array()) schema_fail("table rows must be arrays");
            table.push_back(row.get<std::vector<int>>());
        }
        return group_from_table(table);
    }
    if (j.contains("permutations")) {
        if (!j["permutations"].is_array()) schema_fail("permutations must be an array");
        std::vector<std::vector<int>> gens;
        for (const auto& perm : j["permutations"]) {
            if (!perm.is_array()) schema_fail("permutations must be arrays of images");
            gens.push_back(perm.get<std::vector<int>>());
        }
        return group_from_permutations(gens, order_cap);
    }
    schema_fail("group needs 'catalog', 'table' or 'permutations'");
}

Json cocycle_to_json(const TwoCocycle& tau) {
    if (tau.trivial()) {
        Json j;
        j["trivial"] = true;
        return j;
    }
    Json values = Json::array();
    for (int a = 0; a < tau.order(); ++a) {
        Json row = Json::array();
        for (int b = 0; b < tau.order(); ++b) row.push_back(element_to_json(tau.value(a, b)));
        values.push_back(std::move(row));
    }
    Json j;
    j["values"] = std::move(values);
    return j;
}

TwoCocycle cocycle_from_json(const Json& j, const FiniteGroup& g, const FiniteField& field) {
    if (j.is_string() && j.get<std::string>() == "trivial") return cocycle_trivial(g, field);
    if (!j.is_object()) schema_fail("cocycle must be {'trivial':true} or {'values':[[..]]}");
    if (j.contains("trivial")) {
        if (!j["trivial"].is_boolean() || !j["trivial"].get<bool>())
            schema_fail("'trivial' must be true when present");
        return cocycle_trivial(g, field);
    }
    if (!j.contains("values") || !j["values"].is_array())
        schema_fail("cocycle needs 'trivial' or 'values'");
    std::vector<std::vector<FieldElement>> values;
    for (const auto& row : j["values"]) {
        if (!row.is_array()) schema_fail("cocycle rows must be arrays");
        std::vector<FieldElement> out;
        for (const auto& v : row) out.push_back(element_from_json(v, field));
        values.push_back(std::move(out));
    }
    return cocycle_from_values(g, field, values);
}

Json algelem_to_json(const AlgebraElement& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(element_to_json(c));
    Json j;
    j["coeffs"] = std::move(coeffs);
    return j;
}

AlgebraElement algelem_from_json(const Json& j, const Algebra& a) {
    const Json* coeffs = nullptr;
    if (j.is_array()) {
        coeffs = &j;
    } else if (j.is_object() && j.contains("coeffs") && j["coeffs"].is_array()) {
        coeffs = &j["coeffs"];
    } else {
        schema_fail("algebra element must be {'coeffs':[..]} or a bare list");
    }
    if (int(coeffs->size()) != a.dim()) schema_fail("coefficient count does not match the algebra");
    std::vector<FieldElement> out;
    for (const auto& c : *coeffs) out.push_back(element_from_json(c, a.field()));
    return a.element(std::move(out));
}

// --- certificates -----------------------------------------------------------

Json algebra_context_json(const Algebra& a) {
    require(a.is_group_algebra(), ErrorCode::InternalError,
            "only twisted group algebras are serialized");
    Json j;
    j["field"] = field_to_json(a.field());
    j["group"] = group_to_json(a.group());
    j["cocycle"] = cocycle_to_json(a.cocycle());
    return j;
}

Json radical_certificate(const Algebra& a, const RadicalData& rad) {
    Json j;
    j["kind"] = "radical";
    j.update(algebra_context_json(a));
    j["dim"] = rad.dim;
    j["nilpotency_index"] = rad.nilpotency_index;
    Json basis = Json::array();
    for (const auto& b : rad.basis) basis.push_back(algelem_to_json(b));
    j["basis"] = std::move(basis);
    return j;
}

Json wedderburn_certificate(const DecomposedAlgebra& d) {
    Json j;
    j["kind"] = "wedderburn";
    j.update(algebra_context_json(d.algebra));
    j["seed"] = d.seed;
    j["radical_dim"] = d.rad.dim;
    Json rbasis = Json::array();
    for (const auto& b : d.rad.basis) rbasis.push_back(algelem_to_json(b));
    j["radical_basis"] = std::move(rbasis);
    j["quotient_dim"] = d.quo.quotient.dim();
    Json comps = Json::array();
    for (size_t i = 0; i < d.wd.components.size(); ++i) {
        const WedderburnComponent& c = d.wd.components[i];
        Json comp;
        comp["n"] = c.n;
        comp["K"] = field_to_json(c.K);
        comp["degree_over_F"] = c.degree_over_F;
        comp["idempotent"] = algelem_to_json(c.idempotent);
        Json fpb = Json::array();
        Json imgs = Json::array();
        for (size_t t = 0; t < c.fp_block_basis.size(); ++t) {
            fpb.push_back(algelem_to_json(c.fp_block_basis[t]));
            imgs.push_back(matrix_to_json(d.wd.component_image(c.fp_block_basis[t], int(i))));
        }
        comp["fp_basis"] = std::move(fpb);
        comp["images"] = std::move(imgs);
        comps.push_back(std::move(comp));
    }
    j["components"] = std::move(comps);
    return j;
}

Json derived_certificate_json(const DecomposedAlgebra& d, const AlgebraElement& alpha,
                              const DerivedCertificate& cert) {
    Json j;
    j["kind"] = "derived";
    j.update(algebra_context_json(d.algebra));
    j["seed"] = d.seed;
    j["alpha"] = algelem_to_json(alpha);
    Json dets = Json::array();
    for (size_t i = 0; i < cert.component_dets.size(); ++i) {
        Json entry;
        entry["K"] = field_to_json(d.wd.components[i].K);
        entry["det"] = element_to_json(cert.component_dets[i]);
        dets.push_back(std::move(entry));
    }
    j["component_dets"] = std::move(dets);
    j["verdict"] = cert.verdict;
    return j;
}

Json factorization_certificate(const DecomposedAlgebra& d, const LiftedFactorization& f) {
    Json j;
    j["kind"] = "factorization";
    j.update(algebra_context_json(d.algebra));
    j["seed"] = d.seed;
    j["alpha"] = algelem_to_json(f.alpha);
    DerivedCertificate membership = derived_membership(d, f.alpha);
    Json dets = Json::array();
    for (size_t i = 0; i < membership.component_dets.size(); ++i) {
        Json entry;
        entry["K"] = field_to_json(d.wd.components[i].K);
        entry["det"] = element_to_json(membership.component_dets[i]);
        dets.push_back(std::move(entry));
    }
    j["component_dets"] = std::move(dets);
    Json factors = Json::array();
    for (const auto& cert : f.factors) {
        Json entry;
        entry["element"] = algelem_to_json(cert.u);
        entry["index"] = cert.index;
        factors.push_back(std::move(entry));
    }
    j["factors"] = std::move(factors);
    j["beta"] = algelem_to_json(f.beta);
    j["delta"] = algelem_to_json(f.delta);
    return j;
}

Json sl_factorization_certificate(const UnipotentFactorization& f, const std::string& method) {
    Json j;
    j["kind"] = "sl_factorization";
    j["field"] = field_to_json(f.target.field());
    j["method"] = method;
    j["target"] = matrix_to_json(f.target);
    Json factors = Json::array();
    for (const auto& cert : f.factors) {
        Json entry;
        entry["matrix"] = matrix_to_json(cert.u);
        entry["index"] = cert.index;
        factors.push_back(std::move(entry));
    }
    j["factors"] = std::move(factors);
    return j;
}

Json mat_commutator_certificate(const MatCommutatorWitness& w) {
    Json j;
    j["kind"] = "mat_commutator";
    j["field"] = field_to_json(w.target.field());
    j["target"] = matrix_to_json(w.target);
    j["B"] = matrix_to_json(w.b);
    j["C"] = matrix_to_json(w.c);
    return j;
}

Json alg_commutator_certificate(const Algebra& a, const AlgCommutatorWitness& w) {
    Json j;
    j["kind"] = "alg_commutator";
    j.update(algebra_context_json(a));
    j["target"] = algelem_to_json(w.target);
    j["B"] = algelem_to_json(w.b);
    j["C"] = algelem_to_json(w.c);
    return j;
}

Json nilfree_certificate(const Algebra& a, const NilfreeReport& report) {
    Json j;
    j["kind"] = "nilfree";
    j.update(algebra_context_json(a));
    j["verdict"] = report.verdict;
    j["abelian"] = report.abelian;
    j["order_coprime_to_p"] = report.order_coprime_to_p;
    j["symmetric"] = report.symmetric;
    j["tau_prime_subfield"] = report.tau_prime_subfield;
    if (report.witness) j["witness"] = algelem_to_json(*report.witness);
    return j;
}

Json unitrad_certificate(const Algebra& a, const UnitGroupEnumeration& e, uint64_t seed) {
    Json j;
    j["kind"] = "unipotent_radical";
    j.update(algebra_context_json(a));
    j["seed"] = seed;
    j["unit_group_order"] = e.unit_count;
    j["one_plus_J_order"] = e.one_plus_j_count;
    j["unipotent_count"] = e.unipotent_count;
    j["verdict"] = e.verdict;
    return j;
}

} // namespace unifact
