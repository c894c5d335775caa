#pragma once

// Fusion rings: a based ring with nonnegative structure constants, a unit
// basis element, a duality involution satisfying Frobenius reciprocity, and
// exact Frobenius-Perron dimensions in Q(sqrt(D)).
//
// Index convention throughout the project:
//   N[i][j][k] = (b_i * b_j, b_k)
// so Frobenius reciprocity reads N[i][j][k] = N[dual(i)][k][j] = N[k][dual(j)][i].

#include "fusioncat/numbers.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fusioncat {

struct FusionRing {
    std::string name;
    int rank = 0;
    int fieldD = 0;  // field parameter for the dimension arithmetic
    std::vector<std::string> basisNames;
    std::vector<int> dual;       // involutive permutation, dual[0] == 0
    std::vector<int> N;          // rank^3 tensor, row-major [i][j][k]
    std::vector<QuadExt> fpDim;  // exact FP dimensions, verified on construction
    std::vector<QuadExt> fpDim2; // their squares

    int n(int i, int j, int k) const { return N[(size_t)(i * rank + j) * rank + k]; }
    int& n(int i, int j, int k) { return N[(size_t)(i * rank + j) * rank + k]; }

    bool commutative() const;
    std::vector<int> invertibles() const;  // basis indices with fpDim == 1
    int basis_index(const std::string& label) const;
};

struct RingElement {
    const FusionRing* ring = nullptr;
    std::vector<long long> coeffs;

    RingElement() = default;
    RingElement(const FusionRing& r) : ring(&r), coeffs(r.rank, 0) {}
    static RingElement basis(const FusionRing& r, int i);

    bool operator==(const RingElement& o) const { return ring == o.ring && coeffs == o.coeffs; }
};

enum class RingAxiom {
    Shape,
    UnitLeft,
    UnitRight,
    DualInvolution,
    DualUnit,
    Frobenius,
    Associativity,
    DimHomomorphism,
    DimPositive,
};

struct ValidationReport {
    bool ok = true;
    RingAxiom axiom = RingAxiom::Shape;
    std::string message;  // first violation, with indices
};

const char* ring_axiom_name(RingAxiom a);

// Checks every ring invariant; reports the first violation.
ValidationReport validate_ring(const FusionRing& R);

// Computes the Perron eigenvector of the regular action numerically at quad
// precision, recognizes each entry in Q(sqrt(D)) with denominator <= 64, then
// verifies the homomorphism identity exactly.  Throws number_error when
// recognition or verification fails.
std::vector<QuadExt> fp_dimensions(const FusionRing& R);

// Completes fpDim/fpDim2 on a structurally valid ring (in place).
void attach_fp_dimensions(FusionRing& R);

RingElement elem_mul(const RingElement& x, const RingElement& y);
long long elem_inner(const RingElement& x, const RingElement& y);
QuadExt elem_dim(const RingElement& x);
QuadExt global_dim2(const FusionRing& R);

// Matrix of right multiplication by e: M[i][j] = (b_i * e, b_j).
std::vector<long long> right_mult_matrix(const RingElement& e);

std::string render_ring(const FusionRing& R);
FusionRing parse_ring(const std::string& text);  // throws number_error with line info

// ---- presentations ----------------------------------------------------

// A basis-word presentation: labels are reduced words in a cyclic invertible
// generator and a handful of core generators; products are derived by word
// reduction and certified by full ring validation (associativity in
// particular certifies the completion).
struct RingPresentation {
    std::string name;
    int fieldD = 0;
    // generator symbols; index 0 is the invertible generator when present
    std::vector<std::string> symbols;
    int invertibleOrder = 0;  // 0 = no invertible generator
    std::vector<std::string> basisWords;  // words over symbols, "" = unit
    std::vector<int> dual;
    struct Rule {
        std::string lhs;                                  // word to rewrite
        std::vector<std::pair<int, std::string>> rhs;     // integer combo of words
    };
    std::vector<Rule> rules;
};

// Word-reduction completion; rngSeed shuffles the reduction order (the result
// must not depend on it -- re-run with several seeds as a confluence check).
FusionRing complete_from_presentation(const RingPresentation& P, uint64_t rngSeed = 0);

// Built-in rings: AH1, AH2, AH3, Fib, Z2, Z3, Trivial, Ising.
const FusionRing& builtin_ring(const std::string& name);
std::vector<std::string> builtin_ring_names();
// Presentations backing the completed built-ins (AH2, AH3, Z2).
RingPresentation builtin_presentation(const std::string& name);

}  // namespace fusioncat
