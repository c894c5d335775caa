#pragma once

// Multiplication maps on triples of fusion bimodules (Algorithm 5) and the
// module/bimodule/module variant, plus the full product tables that drive
// the realization deduction.
//
// A map assigns to every basis pair (xi_i, eta_j) a nonnegative integer
// vector v^{ij} over M's basis subject to
//   (a) exact dimension identity   d(xi_i) d(eta_j) = sum_k v_k d(mu_k)
//   (b) norm                       (xi-bar xi, eta eta-bar) = sum_k v_k^2
//   (c)/(c') Frobenius conditions over the outer rings for every pair of
//       cells, and
//   a final pass checking that the map commutes with the A, B, C actions.
// Module triples use (c') only.

#include "fusioncat/bimodule.hpp"

#include <map>

namespace fusioncat {

// v is an l*m*n tensor, cell-major: v[(i*m + j)*n + k].
using MultMapTensor = std::vector<int32_t>;

std::vector<MultMapTensor> multiplication_maps(const FusionBimodule& K, const FusionBimodule& L,
                                               const FusionBimodule& M, size_t limit = SIZE_MAX);
std::vector<MultMapTensor> module_multiplication_maps(const FusionModule& rightModK,
                                                      const FusionBimodule& L,
                                                      const FusionModule& rightModM,
                                                      size_t limit = SIZE_MAX);

// Full re-validation of a finished map (all conditions, plus the redundancy
// check that (b) is the unit-lambda specialization of (c')).
ValidationReport validate_multiplication_map(const FusionBimodule& K, const FusionBimodule& L,
                                             const FusionBimodule& M, const MultMapTensor& v);

// ---- catalogs over a fixed ring family ------------------------------------

struct CatalogSet {
    std::vector<const FusionRing*> rings;
    std::vector<ModuleCatalog> leftMods;   // per ring, canonical order
    std::vector<ModuleCatalog> rightMods;  // opposites, same index order
    std::vector<std::vector<BimoduleCatalog>> bims;  // [i][j], dual-closed

    int nrings() const { return (int)rings.size(); }
    // catalogs for j<i are the duals of (i,j); dualIndex maps entry ids across
    std::vector<std::vector<std::vector<int>>> dualIndex;  // [i][j][e] -> id in (j,i)

    static CatalogSet build(const std::vector<const FusionRing*>& rings, int jobs = 1);

    std::string bim_id(int i, int j, int e) const;
    std::string mod_id(int i, int e) const;
    // parses "<ringL>_<ringR>-<idx>"
    std::tuple<int, int, int> parse_bim_id(const std::string& id) const;
    std::pair<int, int> parse_mod_id(const std::string& id) const;
    int ring_index(const FusionRing* r) const;
};

struct ProductTables {
    // bimProd[i][j][k] maps (K,L) -> sorted vector of M ids, K over (i,j),
    // L over (j,k), M over (i,k)
    std::map<std::tuple<int, int, int>, std::vector<std::vector<std::vector<int>>>> bimProd;
    // modProd[i][j] maps (mod, K) -> sorted vector of right-module ids over j
    std::map<std::pair<int, int>, std::vector<std::vector<std::vector<int>>>> modProd;

    const std::vector<int>& bim_product(int i, int j, int k, int K, int L) const;
    const std::vector<int>& mod_product(int i, int j, int mod, int K) const;
};

// Computes every composable table; resumable via per-combination files under
// dir (empty dir = no checkpointing).  Deterministic for any job count.
ProductTables full_product_tables(const CatalogSet& cats, const std::string& checkpointDir,
                                  int jobs = 1);

std::vector<int> compatible_products(const CatalogSet& cats, int i, int j, int k, int K, int L);
std::vector<int> module_products(const CatalogSet& cats, int i, int j, int mod, int K);

// text form: lines "K-id L-id -> {M-id, ...}" (bimodule) or
// "mod-id K-id -> {mod-id, ...}" (module)
std::string render_bim_table(const CatalogSet& cats, int i, int j, int k,
                             const std::vector<std::vector<std::vector<int>>>& table);
std::string render_mod_table(const CatalogSet& cats, int i, int j,
                             const std::vector<std::vector<std::vector<int>>>& table);
std::string render_map_tensor(const std::string& kId, const std::string& lId,
                              const std::string& mId, int l, int m, int n,
                              const MultMapTensor& v);

ProductTables parse_product_tables(const CatalogSet& cats,
                                   const std::vector<std::string>& bimFiles,
                                   const std::vector<std::string>& modFiles);

}  // namespace fusioncat
