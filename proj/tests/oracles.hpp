#pragma once

// Deliberately naive reference implementations used to cross-check the
// library.  Everything here works from plain integer arithmetic; nothing
// is shared with src/.

#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

inline int64_t mod_norm(int64_t q, const std::vector<int64_t>& u) {
  int64_t s = 0;
  for (int64_t c : u) s += ((c % q) + q) % q * (((c % q) + q) % q);
  return s % q;
}

inline int64_t mod_dist(int64_t q, const std::vector<int64_t>& x,
                        const std::vector<int64_t>& y) {
  int64_t s = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    int64_t dlt = ((x[i] - y[i]) % q + q) % q;
    s += dlt * dlt;
  }
  return s % q;
}

// Rank of the k x d matrix of rows (pts[i+1] - pts[0]) over F_q.
inline bool full_rank_differences(int64_t q,
                                  const std::vector<std::vector<int64_t>>& tup) {
  const size_t k = tup.size() - 1;
  const size_t d = tup[0].size();
  std::vector<std::vector<int64_t>> m(k, std::vector<int64_t>(d));
  for (size_t i = 0; i < k; ++i)
    for (size_t c = 0; c < d; ++c)
      m[i][c] = ((tup[i + 1][c] - tup[0][c]) % q + q) % q;
  size_t r = 0;
  for (size_t col = 0; col < d && r < k; ++col) {
    size_t piv = r;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) continue;
    std::swap(m[r], m[piv]);
    int64_t inv = 1, b = m[r][col], e = q - 2;
    while (e) {
      if (e & 1) inv = inv * b % q;
      b = b * b % q;
      e >>= 1;
    }
    for (size_t i = 0; i < k; ++i) {
      if (i == r || m[i][col] == 0) continue;
      int64_t f = m[i][col] * inv % q;
      for (size_t c = 0; c < d; ++c)
        m[i][c] = ((m[i][c] - f * m[r][c]) % q + q) % q;
    }
    ++r;
  }
  return r == k;
}

// Ordered (k+1)-tuples of E matching every prescribed pairwise distance.
// dists is indexed like the library: (i, j), i < j, position j(j-1)/2 + i.
inline int64_t count_tuples(int64_t q, const std::vector<std::vector<int64_t>>& pts,
                            int k, const std::vector<int64_t>& dists,
                            bool nondegenerate = false) {
  const int64_t n = static_cast<int64_t>(pts.size());
  std::vector<size_t> sel(static_cast<size_t>(k) + 1, 0);
  int64_t count = 0;
  while (true) {
    bool ok = true;
    for (int j = 1; j <= k && ok; ++j)
      for (int i = 0; i < j && ok; ++i)
        ok = mod_dist(q, pts[sel[i]], pts[sel[j]]) ==
             dists[static_cast<size_t>(j) * (j - 1) / 2 + i];
    if (ok && nondegenerate) {
      std::vector<std::vector<int64_t>> tup;
      for (size_t s : sel) tup.push_back(pts[s]);
      ok = full_rank_differences(q, tup);
    }
    if (ok) ++count;
    int pos = k;
    while (pos >= 0 && sel[pos] + 1 == static_cast<size_t>(n)) {
      sel[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++sel[pos];
  }
  return count;
}

inline int64_t count_ordered_pairs(int64_t q,
                                   const std::vector<std::vector<int64_t>>& pts,
                                   int64_t t) {
  int64_t c = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < pts.size(); ++j)
      if (i != j && mod_dist(q, pts[i], pts[j]) == t) ++c;
  return c;
}

// O(q^2d) direct transform straight from the definition.
inline std::vector<std::complex<double>> slow_dft(
    int64_t q, int d, const std::vector<std::complex<double>>& f) {
  const double tau = 6.283185307179586476925286766559;
  int64_t size = 1;
  for (int i = 0; i < d; ++i) size *= q;
  std::vector<std::complex<double>> out(f.size());
  auto digits = [&](int64_t idx) {
    std::vector<int64_t> v(d);
    for (int i = d - 1; i >= 0; --i) {
      v[i] = idx % q;
      idx /= q;
    }
    return v;
  };
  for (int64_t mi = 0; mi < size; ++mi) {
    auto m = digits(mi);
    std::complex<double> acc = 0;
    for (int64_t xi = 0; xi < size; ++xi) {
      auto x = digits(xi);
      int64_t dot = 0;
      for (int i = 0; i < d; ++i) dot += x[i] * m[i];
      dot %= q;
      double ang = -tau * static_cast<double>(dot) / static_cast<double>(q);
      acc += f[xi] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[mi] = acc / static_cast<double>(size);
  }
  return out;
}

}  // namespace oracle
