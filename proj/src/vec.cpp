#include "rsm/vec.hpp"

#include "rsm/rng.hpp"

namespace rsm {

Subspace Subspace::axes(int n, const std::vector<int>& idx) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("Subspace::axes: bad ambient dim");
  if (idx.empty() || static_cast<int>(idx.size()) > n) throw std::invalid_argument("Subspace::axes: bad index count");
  Subspace h;
  h.ambient = n;
  for (int i : idx) {
    if (i < 0 || i >= n) throw std::invalid_argument("Subspace::axes: index out of range");
    h.basis.push_back(Vec::axis(n, i));
  }
  h.validate();
  return h;
}

Subspace Subspace::full(int n) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return axes(n, idx);
}

Subspace Subspace::random(int n, int m, uint64_t seed) {
  if (m < 1 || m > n || n > kMaxDim) throw std::invalid_argument("Subspace::random: need 1 <= m <= n");
  Rng rng(derive_seed(seed, 0x5b5ace, n * 16 + m));
  Subspace h;
  h.ambient = n;
  while (static_cast<int>(h.basis.size()) < m) {
    Vec v = rng.gaussian_vec(n);
    for (const Vec& b : h.basis) v -= dot(v, b) * b;
    double r = norm(v);
    if (r < 1e-6) continue;  // redraw on near-dependence
    h.basis.push_back(v * (1.0 / r));
  }
  // One re-orthogonalization pass tightens the Gram matrix to ~1e-15.
  for (size_t j = 0; j < h.basis.size(); ++j) {
    Vec v = h.basis[j];
    for (size_t k = 0; k < j; ++k) v -= dot(v, h.basis[k]) * h.basis[k];
    h.basis[j] = v * (1.0 / norm(v));
  }
  h.validate();
  return h;
}

void Subspace::validate() const {
  if (ambient < 1 || ambient > kMaxDim) throw std::invalid_argument("Subspace: bad ambient dim");
  if (basis.empty() || static_cast<int>(basis.size()) > ambient)
    throw std::invalid_argument("Subspace: bad basis size");
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].dim() != ambient) throw std::invalid_argument("Subspace: basis/ambient mismatch");
    for (size_t j = 0; j <= i; ++j) {
      double g = dot(basis[i], basis[j]);
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - want) > 1e-10) throw std::invalid_argument("Subspace: basis not orthonormal");
    }
  }
}

Subspace product_subspace(const std::vector<Subspace>& parts) {
  if (parts.empty()) throw std::invalid_argument("product_subspace: empty");
  int total = 0;
  for (const auto& h : parts) total += h.ambient;
  if (total > kMaxDim) throw std::invalid_argument("product_subspace: ambient dim too large");
  Subspace out;
  out.ambient = total;
  int off = 0;
  for (const auto& h : parts) {
    for (const Vec& b : h.basis) {
      Vec v = Vec::zero(total);
      for (int i = 0; i < h.ambient; ++i) v[off + i] = b[i];
      out.basis.push_back(v);
    }
    off += h.ambient;
  }
  out.validate();
  return out;
}

Subspace augment_subspace(const Subspace& h, int extra) {
  if (extra < 0 || h.ambient + extra > kMaxDim) throw std::invalid_argument("augment_subspace: bad extra dims");
  Subspace out;
  out.ambient = h.ambient + extra;
  for (const Vec& b : h.basis) {
    Vec v = Vec::zero(out.ambient);
    for (int i = 0; i < h.ambient; ++i) v[i] = b[i];
    out.basis.push_back(v);
  }
  for (int j = 0; j < extra; ++j) out.basis.push_back(Vec::axis(out.ambient, h.ambient + j));
  out.validate();
  return out;
}

}  // namespace rsm
