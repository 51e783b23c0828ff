#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "nilcomb/errors.hpp"
#include "nilcomb/rational.hpp"

namespace nilcomb {

/// Binomial coefficient with the convention C(n, k) = 0 for k < 0 or k > n.
inline Integer binomial(long long n, long long k) {
  if (k < 0 || k > n || n < 0) return Integer(0);
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

inline long long binomial_ll(long long n, long long k) {
  Integer b = binomial(n, k);
  if (!b.fits_slong_p()) throw CapExceeded("binomial coefficient exceeds 64 bits");
  return b.get_si();
}

/// Calls fn(mask) for every k-subset mask of {0,...,n-1} in ascending numeric
/// order (Gosper's hack). Masks fit in 64 bits; n <= 64.
template <typename Fn>
void for_each_mask(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(std::uint64_t{0});
    return;
  }
  std::uint64_t m = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  const std::uint64_t limit =
      (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  while (true) {
    fn(m);
    if (k == n) break;
    const std::uint64_t lo = m & (~m + 1);
    const std::uint64_t left = m + lo;
    if (left > limit || left == 0) break;
    m = left | (((m ^ left) / lo) >> 2);
    if (m > limit) break;
  }
}

/// Calls fn(indices) for every k-subset of {0,...,n-1}, sorted ascending,
/// enumerated in lexicographic order of the index sequence.
template <typename Fn>
void for_each_combination_lex(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (fn(idx)) return;  // fn returns true to stop early
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::uint64_t mask_from_indices(const std::vector<int>& indices) {
  std::uint64_t m = 0;
  for (int i : indices) m |= std::uint64_t{1} << i;
  return m;
}

inline std::vector<int> indices_from_mask(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace nilcomb
