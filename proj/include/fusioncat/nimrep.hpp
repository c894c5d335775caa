#pragma once

// Enumeration of admissible fusion modules (nimreps) over a fusion ring, up
// to isomorphism, with exact squared dimensions.
//
// Left action tensor convention: act[i][s][t] = (b_i . u_s, u_t), so the
// representation property reads sum_k N[i][j][k] act[k] = act[j] * act[i]
// (matrix product, rows = source).  Right modules store
// act[j][s][t] = (u_s . g_j, u_t) and satisfy sum_k N[i][j][k] act[k] =
// act[i] * act[j].  Dual symmetry in both cases: act[i]^T = act[dual i].

#include "fusioncat/fusion_ring.hpp"
#include "fusioncat/gram.hpp"

#include <optional>

namespace fusioncat {

enum class Side { Left, Right };

struct FusionModule {
    const FusionRing* ring = nullptr;
    Side side = Side::Left;
    int rank = 0;
    std::vector<int32_t> act;   // ring->rank * rank * rank, row-major [i][s][t]
    std::vector<QuadExt> dim2;  // ascending

    int32_t a(int i, int s, int t) const {
        return act[((size_t)i * rank + s) * rank + t];
    }
    int32_t& a(int i, int s, int t) { return act[((size_t)i * rank + s) * rank + t]; }

    // coefficients of the internal end u_s u_s-bar (an element of the ring)
    RingElement internal_end(int s) const;
};

struct ModuleCatalog {
    const FusionRing* ring = nullptr;
    Side side = Side::Left;
    std::vector<FusionModule> mods;  // canonical order, canonical representatives
};

struct CandidateMatrix {
    RingElement xi;
    IntMat A;                     // n x k, columns sorted by (dim2, column)
    std::vector<QuadExt> colDim2;
    QuadExt genDim2;              // = d(xi)
    int genCol = -1;              // the column with 1 in the unit row
};

// All xi with (xi,1) = 1, 0 <= (xi,eta) <= d(eta) per basis eta, dual-symmetric
// coefficients, and positive semi-definite right-multiplication matrix.
std::vector<RingElement> candidate_internal_ends(const FusionRing& R);

// M[i][j] = (b_i xi, b_j), the matrix with A A^T = M for any module generator
// with internal end xi.
IntMat internal_end_matrix(const RingElement& xi);

std::vector<CandidateMatrix> candidate_fusion_matrices(const FusionRing& R, int jobs = 1);

ModuleCatalog enumerate_fusion_modules(const FusionRing& R, Side side, int jobs = 1);

// Opposite module over the same ring (left <-> right); involutive.
FusionModule opposite_module(const FusionModule& M);

// Dimension-preserving basis permutation p with M2.act[i][p[s]][p[t]] ==
// M1.act[i][s][t], if one exists.
std::optional<std::vector<int>> module_iso(const FusionModule& M1, const FusionModule& M2);

// Canonical representative (lexicographically minimal action tensor over
// dimension-preserving permutations) and the comparison key used for catalog
// ordering.
FusionModule canonical_module(const FusionModule& M);
std::vector<int32_t> module_canonical_act(const FusionModule& M);
bool module_less(const FusionModule& A, const FusionModule& B);

// Library-side invariant check (file loads, catalog audits).  The
// search-independent re-validation used by the test suite lives in tests/.
ValidationReport validate_module(const FusionModule& M);

std::string render_module(const FusionModule& M, const std::string& ringName, int index);
// Parses one %module block starting at line `cursor` of the split text.
FusionModule parse_module(const std::vector<std::string>& lines, size_t& cursor,
                          const FusionRing& ring);
std::string render_module_catalog(const ModuleCatalog& cat);
ModuleCatalog parse_module_catalog(const std::string& text, const FusionRing& ring);

}  // namespace fusioncat
