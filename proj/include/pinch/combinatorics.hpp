#pragma once

#include <cstdint>
#include <vector>

namespace pinch {

// Hard cap on the tangent dimension handled by the exterior-algebra tables.
// Overridable at runtime checks; the tables themselves go up to kTableMaxN.
inline constexpr int kDefaultMaxDim = 12;
inline constexpr int kTableMaxN = 16;

std::uint64_t binomial(int n, int k);

// A sorted k-subset of {1,..,n}. Subsets are stored as bitmasks
// (bit i-1 <-> index i) and enumerated in lexicographic order of their
// ascending index lists, which is the canonical basis order everywhere.
struct MultiIndex {
  int n = 0;
  std::vector<int> indices;  // strictly increasing, values in [1, n]

  int degree() const { return static_cast<int>(indices.size()); }
  bool valid() const;
  std::uint32_t mask() const;
  int rank() const;  // position in [0, binom(n,k))
  static MultiIndex unrank(int n, int k, int r);
};

class LexBasis {
 public:
  static const LexBasis& get(int n);

  int n() const { return n_; }
  int dim(int k) const { return static_cast<int>(masks_[k].size()); }
  std::uint32_t mask(int k, int r) const { return masks_[k][r]; }
  int rank(std::uint32_t mask) const { return rank_[mask]; }
  const std::vector<std::uint32_t>& masks(int k) const { return masks_[k]; }

 private:
  explicit LexBasis(int n);
  int n_;
  std::vector<std::vector<std::uint32_t>> masks_;
  std::vector<int> rank_;
};

std::vector<int> mask_indices(std::uint32_t mask);
std::uint32_t mask_of_indices(const std::vector<int>& idx);

// Sign of the shuffle sorting the concatenation (A, B) of two disjoint
// sorted index sets into one sorted set; 0 if the sets overlap.
int merge_sign(std::uint32_t a, std::uint32_t b);

// (-1)^{#elements of mask strictly below index m (1-based)}
int insert_sign(int m, std::uint32_t mask);

// Sign of the permutation sorting an index tuple; 0 on repeated entries.
// Sorts `idx` in place.
int sort_sign(std::vector<int>& idx);

}  // namespace pinch
