#pragma once

// All integration: sectional measures mu(body cap (H+y)), function
// marginals, layer-cake integrals in t, translate suprema of level-set
// sections, and the nested integral on the right of the product-body
// inequality.
//
// Determinism contract: identical (inputs, EstimatorConfig) produce
// bit-identical Estimates at any thread count. Sampling is chunked, each
// chunk draws from a seed derived as hash(seed, chunk index), and chunk
// results reduce in index order.

#include <functional>
#include <vector>

#include "rsm/body.hpp"
#include "rsm/density.hpp"
#include "rsm/funclass.hpp"
#include "rsm/optimize.hpp"
#include "rsm/quad_types.hpp"
#include "rsm/vec.hpp"

namespace rsm {

// Integral of phi over body cap (H + y); only the H-orthogonal component
// of y matters (H + y = H + y_perp as sets). box_mc samples the support box
// of the section; polar integrates phi r^{m-1} along seeded directions from
// an interior base point (falls back to box_mc with a method note when no
// base point is found).
Estimate measure_section(const ConvexBody& body, const Subspace& H, const Vec& y, const Density& d,
                         const EstimatorConfig& cfg);

// Full-space Lebesgue volume (measure_section over the trivial subspace).
Estimate estimate_volume(const ConvexBody& body, const EstimatorConfig& cfg);

// Integral of f * phi over the affine section H + y. Layer-cake over the
// level-set form on a Gauss-Legendre t-grid (with the t = exp(-u^2)
// substitution when level sets are unbounded); box_mc integrates f * phi
// directly instead.
Estimate integrate_function_section(const SConcaveFunction& f, const Subspace& H, const Vec& y,
                                    const Density& d, const EstimatorConfig& cfg);

// Integral over h in H of f(h + shift) phi(h): the marginal of the
// translated function against the in-place density (layer-cake over
// translated level sets; box_mc route available).
Estimate marginal_of_translate(const SConcaveFunction& f, const Subspace& H, const Vec& shift,
                               const Density& d, const EstimatorConfig& cfg);

// Layer-cake with a per-level body transform:
//   sup(f) * Int_0^1 mu(transform(C_t) cap (H + y)) dt.
// transform = identity recovers integrate_function_section's layer route.
Estimate layer_cake_sections(const SConcaveFunction& f,
                             const std::function<ConvexBody(const ConvexBody&)>& transform,
                             const Subspace& H, const Vec& y, const Density& d,
                             const EstimatorConfig& cfg);

struct LayerSupResult {
  Estimate est;
  int flagged_nodes = 0;  // nodes whose translate search did not converge
};

// Int_0^1 sup_y mu((C_t - y) cap H) dt: per-node translate supremum via
// sup_translate with common random numbers and warm starts across nodes.
LayerSupResult layer_sup_integral(const SConcaveFunction& f, const Subspace& H, const Density& d,
                                  const EstimatorConfig& cfg, const SupConfig& sup_cfg);

// sup over z of mu((body - z) cap H): the translate supremum of a single
// body's marginal. Searches the full translate space, restricted to H-perp
// for Lebesgue (where shifts inside H cannot change the section measure).
SupResult sup_section_translate(const ConvexBody& body, const Subspace& H, const Density& d,
                                const EstimatorConfig& cfg, const SupConfig& sup_cfg);

// sup over z of Int_H f(h+z) phi(h) dh.
SupResult sup_marginal_translate(const SConcaveFunction& f, const Subspace& H, const Density& d,
                                 const EstimatorConfig& cfg, const SupConfig& sup_cfg);

// (1 / vol(K)) Int_K prod_i mu_i((y + C_i) cap H_i) dy by outer rejection
// sampling over K and seeded inner section estimates; the uniform-in-K
// average absorbs the 1/vol(K) factor.
Estimate nested_translate_product(const ConvexBody& K, const std::vector<ConvexBody>& companions,
                                  const std::vector<Subspace>& subspaces,
                                  const std::vector<Density>& densities,
                                  const EstimatorConfig& cfg);

// Right side of the product-body inequality: companions C_i = -K.
Estimate nested_srrs_rhs(const ConvexBody& K, const std::vector<Density>& densities,
                         const std::vector<Subspace>& subspaces, const EstimatorConfig& cfg);

// Orthonormal basis of the complement of H (search space for Lebesgue sups).
Subspace orthogonal_complement(const Subspace& H);

}  // namespace rsm
