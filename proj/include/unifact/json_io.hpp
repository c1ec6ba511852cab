#pragma once

#include <string>

#include "json.hpp"

#include "unifact/gafact.hpp"
#include "unifact/unitrad.hpp"

namespace unifact {

/// Insertion-ordered JSON keeps emitted reports byte-stable.
using Json = nlohmann::ordered_json;

Json field_to_json(const FiniteField& field);
FiniteField field_from_json(const Json& j);

/// Elements encode as coefficient lists; prime-field elements as bare integers.
Json element_to_json(const FieldElement& e);
FieldElement element_from_json(const Json& j, const FiniteField& field);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const FiniteField& field);

Json group_to_json(const FiniteGroup& g);
/// Accepts {"catalog":name}, {"order":n,"table":[[..]]} or {"permutations":[[..]]}.
FiniteGroup group_from_json(const Json& j, int order_cap = kDefaultGroupOrderCap);

Json cocycle_to_json(const TwoCocycle& tau);
/// Accepts {"trivial":true} or {"values":[[..]]}.
TwoCocycle cocycle_from_json(const Json& j, const FiniteGroup& g, const FiniteField& field);

Json algelem_to_json(const AlgebraElement& x);
AlgebraElement algelem_from_json(const Json& j, const Algebra& a);

// --- certificates -----------------------------------------------------------

Json algebra_context_json(const Algebra& a);

Json radical_certificate(const Algebra& a, const RadicalData& rad);
Json wedderburn_certificate(const DecomposedAlgebra& d);
Json derived_certificate_json(const DecomposedAlgebra& d, const AlgebraElement& alpha,
                              const DerivedCertificate& cert);
Json factorization_certificate(const DecomposedAlgebra& d, const LiftedFactorization& f);
Json sl_factorization_certificate(const UnipotentFactorization& f, const std::string& method);
Json mat_commutator_certificate(const MatCommutatorWitness& w);
Json alg_commutator_certificate(const Algebra& a, const AlgCommutatorWitness& w);
Json nilfree_certificate(const Algebra& a, const NilfreeReport& report);
Json unitrad_certificate(const Algebra& a, const UnitGroupEnumeration& e, uint64_t seed);

/// Parses a JSON document, mapping parse failures to SchemaError.
Json parse_json(const std::string& text);

} // namespace unifact
