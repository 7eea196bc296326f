#include "pinch/combinatorics.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <utility>

namespace pinch {

namespace {

constexpr int kBinomMax = 63;

struct BinomTable {
  std::array<std::array<std::uint64_t, kBinomMax>, kBinomMax> c{};
  BinomTable() {
    for (int n = 0; n < kBinomMax; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k)
        c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

const BinomTable& binom_table() {
  static const BinomTable t;
  return t;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (n >= kBinomMax) throw std::invalid_argument("binomial: n too large");
  return binom_table().c[n][k];
}

LexBasis::LexBasis(int n) : n_(n) {
  masks_.resize(n + 1);
  rank_.assign(std::size_t{1} << n, -1);
  for (int k = 0; k <= n; ++k) {
    masks_[k].reserve(binomial(n, k));
    // enumerate k-subsets in lexicographic order of their index lists
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = i + 1;
    while (true) {
      std::uint32_t m = 0;
      for (int v : s) m |= 1u << (v - 1);
      rank_[m] = static_cast<int>(masks_[k].size());
      masks_[k].push_back(m);
      if (k == 0) break;
      int i = k - 1;
      while (i >= 0 && s[i] == n - (k - 1 - i)) --i;
      if (i < 0) break;
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
  }
}

const LexBasis& LexBasis::get(int n) {
  if (n < 0 || n > kTableMaxN) throw std::invalid_argument("LexBasis: dimension out of range");
  static const std::array<LexBasis, kTableMaxN + 1> tables = [] {
    return []<std::size_t... I>(std::index_sequence<I...>) {
      return std::array<LexBasis, kTableMaxN + 1>{LexBasis(static_cast<int>(I))...};
    }(std::make_index_sequence<kTableMaxN + 1>{});
  }();
  return tables[n];
}

bool MultiIndex::valid() const {
  if (n < 0) return false;
  int prev = 0;
  for (int v : indices) {
    if (v <= prev || v > n) return false;
    prev = v;
  }
  return true;
}

std::uint32_t MultiIndex::mask() const { return mask_of_indices(indices); }

int MultiIndex::rank() const { return LexBasis::get(n).rank(mask()); }

MultiIndex MultiIndex::unrank(int n, int k, int r) {
  MultiIndex mi;
  mi.n = n;
  mi.indices = mask_indices(LexBasis::get(n).mask(k, r));
  return mi;
}

std::vector<int> mask_indices(std::uint32_t mask) {
  std::vector<int> out;
  while (mask) {
    int b = std::countr_zero(mask);
    out.push_back(b + 1);
    mask &= mask - 1;
  }
  return out;
}

std::uint32_t mask_of_indices(const std::vector<int>& idx) {
  std::uint32_t m = 0;
  for (int v : idx) m |= 1u << (v - 1);
  return m;
}

int merge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int inv = 0;
  std::uint32_t bb = b;
  while (bb) {
    int j = std::countr_zero(bb);
    inv += std::popcount(a >> (j + 1));
    bb &= bb - 1;
  }
  return (inv & 1) ? -1 : 1;
}

int insert_sign(int m, std::uint32_t mask) {
  int below = std::popcount(mask & ((1u << (m - 1)) - 1));
  return (below & 1) ? -1 : 1;
}

int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

}  // namespace pinch
