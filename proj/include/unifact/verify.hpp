#pragma once

#include "unifact/json_io.hpp"

namespace unifact {

/// Re-checks every identity a serialized certificate claims, from scratch
/// and with no trust in the producer: products, nilpotency powers,
/// commutators, idempotent relations and homomorphism equations are all
/// recomputed. Throws CertificateInvalid naming the first failing identity,
/// or SchemaError for malformed input. Returns the certificate kind.
std::string verify_certificate(const Json& certificate);

} // namespace unifact
