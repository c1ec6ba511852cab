// unifact: certified unipotent factorizations in matrix groups over finite
// fields and in finite twisted group algebras.
//
// Exit codes: 0 success, 1 malformed input or resource cap, 2 mathematical
// refusal (the inputs are valid but the requested statement fails, e.g. the
// element is not in the derived subgroup, or a certificate does not verify).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "unifact/json_io.hpp"
#include "unifact/verify.hpp"

using namespace unifact;

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::SchemaError:
        case ErrorCode::NonPrime:
        case ErrorCode::ReducibleModulus:
        case ErrorCode::NotAssociative:
        case ErrorCode::NoIdentity:
        case ErrorCode::NoInverse:
        case ErrorCode::OrderCapExceeded:
        case ErrorCode::CocycleIdentityFails:
        case ErrorCode::NotNormalized:
        case ErrorCode::ZeroValue:
        case ErrorCode::FieldMismatch:
        case ErrorCode::DimensionCap:
        case ErrorCode::EnumerationCap:
        case ErrorCode::NotSquare:
        case ErrorCode::InternalError:
            return 1;
        default:
            return 2;
    }
}

struct Inputs {
    std::string field;
    std::string group;
    std::string cocycle = "trivial";
    std::string element;
    std::string matrix;
    std::string certificate_path;
    std::string method = "bounded";
    std::string out;
    uint64_t seed = 0;
};

FiniteField parse_field(const std::string& text) {
    require(!text.empty(), ErrorCode::SchemaError, "--field is required");
    if (text[0] == '{') return field_from_json(parse_json(text));
    // shorthand: "q" or "p^k"
    auto caret = text.find('^');
    if (caret != std::string::npos) {
        uint32_t p = uint32_t(std::stoul(text.substr(0, caret)));
        uint32_t k = uint32_t(std::stoul(text.substr(caret + 1)));
        return FiniteField::make(p, k);
    }
    uint64_t q = std::stoull(text);
    for (uint32_t p = 2; uint64_t(p) * p <= q; ++p) {
        if (q % p != 0) continue;
        uint32_t k = 0;
        uint64_t rest = q;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        require(rest == 1, ErrorCode::NonPrime, "field size is not a prime power");
        return FiniteField::make(p, k);
    }
    return FiniteField::make(uint32_t(q), 1);
}

FiniteGroup parse_group(const std::string& text) {
    require(!text.empty(), ErrorCode::SchemaError, "--group is required");
    int order_cap = kDefaultGroupOrderCap;
    if (const char* env = std::getenv("UNIFACT_ORDER_CAP")) order_cap = std::stoi(env);
    if (text[0] == '{') return group_from_json(parse_json(text), order_cap);
    return catalog_group(text);
}

TwoCocycle parse_cocycle(const std::string& text, const FiniteGroup& g, const FiniteField& f) {
    if (text.empty() || text == "trivial") return cocycle_trivial(g, f);
    return cocycle_from_json(parse_json(text), g, f);
}

Algebra parse_algebra(const Inputs& in, FiniteField& field_out) {
    field_out = parse_field(in.field);
    FiniteGroup g = parse_group(in.group);
    TwoCocycle tau = parse_cocycle(in.cocycle, g, field_out);
    return Algebra::twisted_group_algebra(field_out, g, tau);
}

void emit(const Json& report, const Inputs& in) {
    std::string text = report.dump(2);
    std::cout << text << "\n";
    if (!in.out.empty()) {
        std::ofstream f(in.out);
        require(f.good(), ErrorCode::SchemaError, "cannot open output file " + in.out);
        f << text << "\n";
    }
}

int run_command(const std::string& cmd, const Inputs& in) {
    if (cmd == "verify") {
        require(!in.certificate_path.empty(), ErrorCode::SchemaError,
                "verify needs a certificate file");
        std::ifstream f(in.certificate_path);
        require(f.good(), ErrorCode::SchemaError,
                "cannot read certificate " + in.certificate_path);
        std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        std::string kind = verify_certificate(parse_json(text));
        Json report;
        report["verified"] = true;
        report["kind"] = kind;
        emit(report, in);
        return 0;
    }

    if (cmd == "sl-factor") {
        FiniteField F = parse_field(in.field);
        require(!in.matrix.empty(), ErrorCode::SchemaError, "sl-factor needs --matrix");
        Matrix a = matrix_from_json(parse_json(in.matrix), F);
        UnipotentFactorization f = in.method == "transvections"
                                       ? transvection_factorization(a)
                                       : three_unipotent_factorization(a);
        emit(sl_factorization_certificate(f, in.method), in);
        return 0;
    }

    if (cmd == "commutator-witness" && !in.matrix.empty()) {
        FiniteField F = parse_field(in.field);
        Matrix a = matrix_from_json(parse_json(in.matrix), F);
        MatCommutatorWitness w = commutator_witness_index2(a);
        emit(mat_commutator_certificate(w), in);
        return 0;
    }

    FiniteField F;
    Algebra A = parse_algebra(in, F);

    if (cmd == "radical") {
        emit(radical_certificate(A, radical(A)), in);
        return 0;
    }
    if (cmd == "wedderburn") {
        emit(wedderburn_certificate(decompose(A, in.seed)), in);
        return 0;
    }
    if (cmd == "nilfree") {
        NilfreeReport report = nilfree_check(F, A.group(), A.cocycle(), in.seed);
        emit(nilfree_certificate(A, report), in);
        return 0;
    }
    if (cmd == "unipotent-radical") {
        RadicalData rad = radical(A);
        uint64_t cap = kUnitEnumerationCap;
        if (const char* env = std::getenv("UNIFACT_ENUM_CAP")) cap = std::stoull(env);
        UnitGroupEnumeration e = unipotent_radical_check(A, rad, cap);
        emit(unitrad_certificate(A, e, in.seed), in);
        return 0;
    }
    if (cmd == "is-derived") {
        require(!in.element.empty(), ErrorCode::SchemaError, "is-derived needs --element");
        DecomposedAlgebra d = decompose(A, in.seed);
        AlgebraElement alpha = algelem_from_json(parse_json(in.element), A);
        DerivedCertificate cert = derived_membership(d, alpha);
        emit(derived_certificate_json(d, alpha, cert), in);
        return cert.verdict ? 0 : 2;
    }
    if (cmd == "factor") {
        require(!in.element.empty(), ErrorCode::SchemaError, "factor needs --element");
        DecomposedAlgebra d = decompose(A, in.seed);
        AlgebraElement alpha = algelem_from_json(parse_json(in.element), A);
        LiftedFactorization f = factor_three_unipotents(d, alpha);
        emit(factorization_certificate(d, f), in);
        return 0;
    }
    if (cmd == "commutator-witness") {
        require(!in.element.empty(), ErrorCode::SchemaError,
                "commutator-witness needs --element or --matrix");
        DecomposedAlgebra d = decompose(A, in.seed);
        AlgebraElement u = algelem_from_json(parse_json(in.element), A);
        AlgCommutatorWitness w = index2_commutator_semisimple(d, u);
        emit(alg_commutator_certificate(A, w), in);
        return 0;
    }
    fail(ErrorCode::SchemaError, "unknown command " + cmd);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified unipotent factorizations in finite twisted group algebras"};
    app.require_subcommand(1);

    Inputs in;
    std::vector<CLI::App*> subs;
    const std::vector<std::pair<const char*, const char*>> commands{
        {"radical", "Jacobson radical of F^tau G with nilpotency certificate"},
        {"wedderburn", "decomposition of the semisimple quotient into matrix rings"},
        {"factor", "write a derived-subgroup element as <= 3 unipotent factors"},
        {"is-derived", "derived-subgroup membership via component determinants"},
        {"commutator-witness", "[B,C] = A for a unipotent A of index 2"},
        {"nilfree", "decide whether F^tau G has nonzero nilpotent elements"},
        {"unipotent-radical", "exhaustively verify u(R*) = 1 + J"},
        {"sl-factor", "factor an SL_n matrix into unipotent matrices"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--field", in.field, "field as JSON {p,k,modulus?} or shorthand q / p^k");
        sub->add_option("--group", in.group, "group as JSON or catalog name");
        sub->add_option("--cocycle", in.cocycle, "cocycle as JSON or 'trivial'");
        sub->add_option("--element", in.element, "algebra element as JSON {coeffs:[..]}");
        sub->add_option("--matrix", in.matrix, "matrix as JSON {rows,cols,entries}");
        sub->add_option("--seed", in.seed, "seed for randomized (but reproducible) splitting");
        sub->add_option("--out", in.out, "also write the report to this file");
        if (std::string(name) == "sl-factor")
            sub->add_option("--method", in.method, "bounded (<= 3 factors) or transvections");
        subs.push_back(sub);
    }
    CLI::App* verify_cmd = app.add_subcommand("verify", "re-check a serialized certificate");
    verify_cmd->add_option("certificate", in.certificate_path, "certificate JSON file");
    verify_cmd->add_option("--out", in.out, "also write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run_command(cmd, in);
    } catch (const Error& e) {
        Json report;
        report["error"] = error_code_name(e.code());
        report["message"] = e.what();
        std::cout << report.dump(2) << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        Json report;
        report["error"] = "SchemaError";
        report["message"] = e.what();
        std::cout << report.dump(2) << "\n";
        return 1;
    }
}
