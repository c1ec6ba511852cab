// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "unifact/verify.hpp"

using namespace unifact;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string note;
    bool ok = true;
    try {
        body();
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), seconds, note.empty() ? "" : " -- ", note.c_str());
    if (!ok) ++failures;
}

void expect(bool condition, const std::string& what) {
    if (!condition) throw std::runtime_error(what);
}

FiniteField field_of(uint32_t q) {
    if (q == 4) return FiniteField::make(2, 2);
    if (q == 9) return FiniteField::make(3, 2);
    return FiniteField::make(q, 1);
}

struct Instance {
    uint32_t q;
    std::string group;
    bool twisted = false;
};

Algebra build_instance(const Instance& inst) {
    FiniteField f = field_of(inst.q);
    FiniteGroup g = catalog_group(inst.group);
    if (!inst.twisted) return Algebra::twisted_group_algebra(f, g, cocycle_trivial(g, f));
    // nontrivial cocycle over GF(4): no nontrivial prime-subfield-valued
    // cocycle exists in characteristic 2, so a coboundary with values in
    // GF(4)* is used
    std::vector<FieldElement> mu(4, f.one());
    mu[1] = f.from_coords({0, 1});
    mu[2] = f.from_coords({1, 1});
    TwoCocycle tau = cocycle_coboundary(g, f, mu);
    expect(!tau.trivial(), "the twisted instance must have a nontrivial cocycle");
    return Algebra::twisted_group_algebra(f, g, tau);
}

AlgebraElement random_derived_element(const DecomposedAlgebra& d, Rng& rng) {
    AlgebraElement out = d.algebra.one();
    int commutators = 1 + int(rng.below(2));
    for (int i = 0; i < commutators; ++i) {
        AlgebraElement u = random_unit(d.algebra, rng);
        AlgebraElement v = random_unit(d.algebra, rng);
        out = out * commutator(u, v).pow(1 + int64_t(rng.below(3)));
    }
    return out;
}

std::vector<Matrix> all_sl2(const FiniteField& f) {
    std::vector<Matrix> out;
    uint64_t q = f.q();
    for (uint64_t i = 0; i < q * q * q * q; ++i) {
        Matrix m(f, 2, 2);
        uint64_t rest = i;
        for (int t = 0; t < 4; ++t) {
            m.set(t / 2, t % 2, f.from_index(rest % q));
            rest /= q;
        }
        if (det(m).is_one()) out.push_back(std::move(m));
    }
    return out;
}

Matrix random_invertible(const FiniteField& f, int n, Rng& rng) {
    while (true) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.set(i, j, f.from_index(rng.below(f.q())));
        if (!det(m).is_zero()) return m;
    }
}

// certificate corpus shared between criteria 1-7 and criterion 8
std::vector<Json> cert_corpus;

// Perturbations target the certificate's mathematical content. Input
// descriptors (field, group, cocycle, seeds) select WHICH claim is made, and
// perturbing them can produce a different but still true claim: a prime
// field, say, is described equally well by any monic degree-1 modulus.
bool is_descriptor_key(const std::string& key) {
    static const std::vector<std::string> skip{"seed", "field",   "group", "cocycle",
                                               "K",    "p",       "k",     "modulus",
                                               "order", "table",  "kind",  "method"};
    for (const auto& s : skip)
        if (key == s) return true;
    return false;
}

void walk_leaves(const Json& j, const std::string& pointer,
                 std::vector<std::string>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (is_descriptor_key(it.key())) continue;
            walk_leaves(it.value(), pointer + "/" + it.key(), out);
        }
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            walk_leaves(j[i], pointer + "/" + std::to_string(i), out);
    } else if (j.is_number_integer() || j.is_number_unsigned() || j.is_boolean()) {
        out.push_back(pointer);
    }
}

} // namespace

int main() {
    criterion(1, "derived-subgroup round trip, 5 algebras x 200 seeded elements", [] {
        auto start = std::chrono::steady_clock::now();
        std::vector<Instance> instances{{3, "S3"},
                                        {4, "C2xC2", true},
                                        {5, "D4"},
                                        {9, "C3"},
                                        {3, "Q8"}};
        for (size_t idx = 0; idx < instances.size(); ++idx) {
            DecomposedAlgebra d = decompose(build_instance(instances[idx]), 0);
            Rng rng(1000 + idx);
            for (int t = 0; t < 200; ++t) {
                AlgebraElement alpha = random_derived_element(d, rng);
                LiftedFactorization f = factor_three_unipotents(d, alpha);
                expect(int(f.factors.size()) <= 3, "more than three factors");
                expect(f.product() == alpha, "factor product differs from the input");
                for (const auto& cert : f.factors)
                    expect(cert.check(), "factor certificate failed");
                if (t < 2) cert_corpus.push_back(factorization_certificate(d, f));
            }
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        expect(seconds < 60.0, "round trip exceeded the 60 s budget");
    });

    criterion(2, "exhaustive SL_2 bounds for q in {3,4,5} and the 2I2 oracle", [] {
        for (uint32_t q : {3u, 4u, 5u}) {
            FiniteField f = field_of(q);
            for (const auto& m : all_sl2(f)) {
                if (m.is_scalar() && !m.is_identity()) {
                    UnipotentFactorization fac = three_unipotent_factorization(m);
                    expect(int(fac.factors.size()) <= 3, "central case exceeded 3 factors");
                    expect(fac.verify(), "central factorization failed to verify");
                } else {
                    UnipotentFactorization fac = two_unipotent_factorization(m);
                    expect(int(fac.factors.size()) <= 2, "noncentral case exceeded 2 factors");
                    expect(fac.verify(), "factorization failed to verify");
                }
            }
        }
        // brute-force oracle: 2*I over GF(3) is not a product of two unipotents
        FiniteField f3 = field_of(3);
        Matrix center = Matrix::identity(f3, 2).scaled(f3.scalar(2));
        std::vector<Matrix> unipotents;
        for (const auto& m : all_sl2(f3))
            if (is_unipotent(m)) unipotents.push_back(m);
        for (const auto& a : unipotents)
            for (const auto& b : unipotents)
                expect(a * b != center, "2I admitted a two-unipotent expression");
        UnipotentFactorization fac = three_unipotent_factorization(center);
        expect(fac.factors.size() == 3, "central 2I needs exactly three factors");
        cert_corpus.push_back(sl_factorization_certificate(fac, "bounded"));
        cert_corpus.push_back(
            sl_factorization_certificate(transvection_factorization(center), "transvections"));
    });

    criterion(3, "commutator witnesses for index-2 unipotents, n <= 4, q in {3,4,5}", [] {
        for (uint32_t q : {3u, 4u, 5u}) {
            FiniteField f = field_of(q);
            // exhaustive for n = 2
            for (const auto& m : all_sl2(f)) {
                auto cert = is_unipotent(m);
                if (!cert) continue;
                MatCommutatorWitness w = commutator_witness_index2(m);
                expect(w.verify(), "2x2 witness failed");
            }
            // conjugates of canonical forms for n = 3, 4
            Rng rng(300 + q);
            for (int n = 3; n <= 4; ++n) {
                for (int r = 1; 2 * r <= n; ++r) {
                    Matrix canonical = Matrix::identity(f, n);
                    for (int i = 0; i < r; ++i) canonical.set(i, r + i, f.one());
                    for (int t = 0; t < 25; ++t) {
                        Matrix conj = random_invertible(f, n, rng);
                        Matrix a = conj * canonical * inverse(conj);
                        MatCommutatorWitness w = commutator_witness_index2(a);
                        expect(w.verify(), "witness failed on a conjugated canonical form");
                        if (t == 0 && n == 3)
                            cert_corpus.push_back(mat_commutator_certificate(w));
                    }
                }
            }
        }
    });

    criterion(4, "nil-free verdicts match exhaustive search over the catalog", [] {
        size_t scanned = 0, skipped = 0;
        for (const auto& name : catalog_names()) {
            FiniteGroup g = catalog_group(name);
            for (uint32_t q : {3u, 4u, 5u, 9u}) {
                FiniteField f = field_of(q);
                std::vector<TwoCocycle> suite{cocycle_trivial(g, f)};
                if (f.p() > 2) {
                    // seeded prime-subfield coboundaries (symmetric on abelian
                    // groups, generally asymmetric otherwise)
                    Rng rng(q + g.order());
                    for (int variant = 0; variant < 2; ++variant) {
                        std::vector<FieldElement> mu(g.order(), f.one());
                        for (int i = 0; i < g.order(); ++i) {
                            if (i == g.identity()) continue;
                            mu[i] = f.scalar(1 + int64_t(rng.below(f.p() - 1)));
                        }
                        suite.push_back(cocycle_coboundary(g, f, mu));
                    }
                    if (name == "C2xC2") {
                        std::vector<std::vector<FieldElement>> values(
                            4, std::vector<FieldElement>(4, f.one()));
                        for (int u = 0; u < 4; ++u)
                            for (int v = 0; v < 4; ++v)
                                if (((u >> 1) & 1) && (v & 1)) values[u][v] = f.scalar(-1);
                        suite.push_back(cocycle_from_values(g, f, values));
                    }
                }
                for (const auto& tau : suite) {
                    expect(tau.prime_subfield_valued(),
                           "criterion-4 cocycles must be prime-subfield valued");
                    NilfreeReport report = nilfree_check(f, g, tau);
                    bool structural = g.abelian() && (g.order() % int(f.p()) != 0) &&
                                      cocycle_symmetric(g, tau);
                    expect(report.verdict == structural, "structural verdict mismatch");
                    if (!report.verdict) {
                        expect(report.witness.has_value(), "missing witness");
                        expect(!report.witness->is_zero() &&
                                   nilpotency_index(*report.witness).has_value(),
                               "witness is not a nonzero nilpotent");
                    }
                    Algebra a = Algebra::twisted_group_algebra(f, g, tau);
                    if (a.element_count() <= kExhaustiveScanCap) {
                        bool found = exhaustive_nilpotent_search(a).has_value();
                        expect(report.verdict == !found,
                               "verdict disagrees with the exhaustive search");
                        ++scanned;
                    } else {
                        ++skipped; // beyond the q^dim cap: exhaustive check not run
                    }
                }
            }
        }
        std::printf("        (%zu instances scanned exhaustively, %zu above the cap)\n",
                    scanned, skipped);
        // corpus samples
        FiniteField f4 = field_of(4);
        FiniteGroup c3 = catalog_group("C3");
        Algebra a = Algebra::twisted_group_algebra(f4, c3, cocycle_trivial(c3, f4));
        cert_corpus.push_back(nilfree_certificate(a, nilfree_check(f4, c3, cocycle_trivial(c3, f4))));
        FiniteGroup s3 = catalog_group("S3");
        FiniteField f5 = field_of(5);
        Algebra b = Algebra::twisted_group_algebra(f5, s3, cocycle_trivial(s3, f5));
        cert_corpus.push_back(nilfree_certificate(b, nilfree_check(f5, s3, cocycle_trivial(s3, f5))));
    });

    criterion(5, "radical correctness: Maschke, p-groups, nilpotency, semisimple quotient", [] {
        for (const auto& name : catalog_names()) {
            FiniteGroup g = catalog_group(name);
            for (uint32_t q : {3u, 4u, 5u, 9u}) {
                FiniteField f = field_of(q);
                Algebra a = Algebra::twisted_group_algebra(f, g, cocycle_trivial(g, f));
                RadicalData rad = radical(a); // construction re-verifies the
                                              // ideal, nilpotency and the
                                              // semisimple quotient
                if (g.order() % int(f.p()) != 0)
                    expect(rad.dim == 0, "Maschke case has a nonzero radical");
                bool p_group = true;
                for (int x = 1; p_group && x < g.order(); ++x) {
                    int ord = g.element_order(x);
                    while (ord % int(f.p()) == 0) ord /= int(f.p());
                    p_group = ord == 1;
                }
                if (p_group) {
                    expect(rad.dim == g.order() - 1, "p-group radical has wrong dimension");
                    for (int x = 1; x < g.order(); ++x)
                        expect(rad.contains(a.basis_element(x) - a.one()),
                               "augmentation ideal is not inside the radical");
                }
                QuotientData quo = quotient(a, rad);
                expect(radical(quo.quotient).dim == 0, "quotient radical is nonzero");
            }
        }
        Algebra c3 = Algebra::twisted_group_algebra(field_of(3), catalog_group("C3"),
                                                    cocycle_trivial(catalog_group("C3"),
                                                                    field_of(3)));
        cert_corpus.push_back(radical_certificate(c3, radical(c3)));
    });

    criterion(6, "Wedderburn structure: dimension count and verified isomorphisms", [] {
        for (const auto& name : catalog_names()) {
            FiniteGroup g = catalog_group(name);
            for (uint32_t q : {3u, 4u, 5u, 9u}) {
                FiniteField f = field_of(q);
                Algebra a = Algebra::twisted_group_algebra(f, g, cocycle_trivial(g, f));
                DecomposedAlgebra d = decompose(a, 0);
                int total = 0;
                for (const auto& comp : d.wd.components) {
                    expect(comp.n >= 1, "component with nonpositive matrix size");
                    expect(comp.K.q() >= f.q(), "component field does not contain F");
                    total += comp.n * comp.n * comp.degree_over_F;
                }
                expect(total == d.quo.quotient.dim(), "sum n_i^2 [K_i:F] != dim(A/J)");
                // verified homomorphism, re-asserted on random products
                Rng rng(q);
                for (int t = 0; t < 10; ++t) {
                    AlgebraElement x = random_element(d.quo.quotient, rng);
                    AlgebraElement y = random_element(d.quo.quotient, rng);
                    for (size_t i = 0; i < d.wd.components.size(); ++i)
                        expect(d.wd.component_image(x * y, int(i)) ==
                                   d.wd.component_image(x, int(i)) *
                                       d.wd.component_image(y, int(i)),
                               "component map is not multiplicative");
                }
            }
        }
        cert_corpus.push_back(wedderburn_certificate(
            decompose(Algebra::twisted_group_algebra(field_of(3), catalog_group("Q8"),
                                                     cocycle_trivial(catalog_group("Q8"),
                                                                     field_of(3))),
                      0)));
    });

    criterion(7, "unipotent radical: u(R*) = 1 + J on the four target instances", [] {
        auto start = std::chrono::steady_clock::now();
        struct Case {
            uint32_t q;
            std::string name;
        };
        for (const Case& c : {Case{4, "C2"}, Case{9, "C3"}, Case{4, "C2xC2"}, Case{5, "C2"}}) {
            FiniteField f = field_of(c.q);
            FiniteGroup g = catalog_group(c.name);
            Algebra a = Algebra::twisted_group_algebra(f, g, cocycle_trivial(g, f));
            RadicalData rad = radical(a);
            UnitGroupEnumeration e = unipotent_radical_check(a, rad);
            expect(e.verdict, "unipotent radical differs from 1 + J");
            uint64_t expected = 1;
            for (int i = 0; i < rad.dim; ++i) expected *= f.q();
            expect(e.one_plus_j_count == expected, "|1+J| != q^dim J");
            if (c.q == 4 && c.name == "C2")
                cert_corpus.push_back(unitrad_certificate(a, e, 0));
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        expect(seconds < 10.0, "enumeration exceeded the 10 s budget");
    });

    criterion(8, "certificate integrity: all verify, all single-entry perturbations fail", [] {
        // derived certificate joins the corpus here to keep criterion 1 lean
        DecomposedAlgebra d = decompose(build_instance({5, "C2"}), 0);
        cert_corpus.push_back(derived_certificate_json(
            d, d.algebra.basis_element(1), derived_membership(d, d.algebra.basis_element(1))));

        expect(!cert_corpus.empty(), "empty certificate corpus");
        size_t perturbations = 0;
        for (const auto& cert : cert_corpus) {
            verify_certificate(cert); // throws when invalid
            std::vector<std::string> leaves;
            walk_leaves(cert, "", leaves);
            expect(!leaves.empty(), "certificate with no perturbable entries");
            for (const auto& pointer : leaves) {
                Json mutated = cert;
                Json& leaf = mutated.at(Json::json_pointer(pointer));
                if (leaf.is_boolean()) {
                    leaf = !leaf.get<bool>();
                } else {
                    leaf = leaf.get<int64_t>() + 1;
                }
                ++perturbations;
                bool rejected = false;
                try {
                    verify_certificate(mutated);
                } catch (const Error&) {
                    rejected = true;
                }
                expect(rejected, "a perturbed certificate passed verification: " +
                                     cert.at("kind").get<std::string>() + pointer);
            }
        }
        std::printf("        (%zu certificates, %zu perturbations, all rejected)\n",
                    cert_corpus.size(), perturbations);
    });

    if (failures == 0) std::printf("acceptance: all 8 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
