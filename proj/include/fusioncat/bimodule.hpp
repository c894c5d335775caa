#pragma once

// Admissible fusion bimodules over a pair of fusion rings (Algorithm 4):
// pair a left module over the left ring with a right module over the right
// ring sharing the same dimension vector, search dimension-preserving basis
// identifications making the actions commute, keep the ones satisfying the
// bimodule admissibility identities, dedupe up to bimodule isomorphism.

#include "fusioncat/nimrep.hpp"

namespace fusioncat {

struct FusionBimodule {
    const FusionRing* leftRing = nullptr;
    const FusionRing* rightRing = nullptr;
    int rank = 0;
    std::vector<int32_t> lact;  // nL * m * m, lact[i][s][t] = (b_i u_s, u_t)
    std::vector<int32_t> ract;  // nR * m * m, ract[j][s][t] = (u_s g_j, u_t)
    std::vector<QuadExt> dim2;  // ascending

    int32_t l(int i, int s, int t) const { return lact[((size_t)i * rank + s) * rank + t]; }
    int32_t& l(int i, int s, int t) { return lact[((size_t)i * rank + s) * rank + t]; }
    int32_t r(int j, int s, int t) const { return ract[((size_t)j * rank + s) * rank + t]; }
    int32_t& r(int j, int s, int t) { return ract[((size_t)j * rank + s) * rank + t]; }

    RingElement left_end(int t) const;   // internal end in the left ring
    RingElement right_end(int t) const;  // internal end in the right ring
    FusionModule left_module() const;
    FusionModule right_module() const;
};

struct BimoduleCatalog {
    const FusionRing* leftRing = nullptr;
    const FusionRing* rightRing = nullptr;
    std::vector<FusionBimodule> entries;  // canonical order & representatives
};

std::vector<FusionBimodule> enumerate_fusion_bimodules(const FusionRing& RL,
                                                       const FusionRing& RR,
                                                       const ModuleCatalog& leftMods,
                                                       const ModuleCatalog& rightMods,
                                                       int jobs = 1);

// Convenience: enumerates the module catalogs itself.
BimoduleCatalog enumerate_bimodule_catalog(const FusionRing& RL, const FusionRing& RR,
                                           int jobs = 1);

// Inverse equivalence over the swapped ring pair: actions exchanged with each
// matrix transposed.  Involutive; preserves dim2.
FusionBimodule dual_bimodule(const FusionBimodule& B);

FusionBimodule identity_bimodule(const FusionRing& R);

// Forget one action and locate the class in the module catalog.
// side Left: the left module in leftRing's catalog; Right: the right module
// located in rightRing's catalog via its opposite (catalogs store left
// modules).  Throws if the restriction is disconnected.
int restrict_to_catalog(const FusionBimodule& B, Side side, const ModuleCatalog& cat);
FusionModule restrict_module(const FusionBimodule& B, Side side);

std::optional<std::vector<int>> bimodule_iso(const FusionBimodule& A, const FusionBimodule& B);
FusionBimodule canonical_bimodule(const FusionBimodule& B);
bool bimodule_less(const FusionBimodule& A, const FusionBimodule& B);

ValidationReport validate_bimodule(const FusionBimodule& B);

std::string render_bimodule(const FusionBimodule& B, int index);
std::string render_bimodule_catalog(const BimoduleCatalog& cat);
BimoduleCatalog parse_bimodule_catalog(const std::string& text, const FusionRing& RL,
                                       const FusionRing& RR);

}  // namespace fusioncat
