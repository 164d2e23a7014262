// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference computations written against std::set, independent of
// the library's implementations. Counts are exact integers; per-paragraph
// means are accumulated in long double.

#pragma once

#include <cstdint>
#include <set>
#include <vector>

namespace voicelens::testing::oracle {

using Set = std::set<int>;

struct Ratio {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline long long intersection_size(const Set& a, const Set& b) {
  long long n = 0;
  for (int x : a) n += b.count(x);
  return n;
}

inline long long union_size(const Set& a, const Set& b) {
  Set u = a;
  u.insert(b.begin(), b.end());
  return static_cast<long long>(u.size());
}

// Mean over eligible paragraphs; eligible == 0 means undefined.
struct Mean {
  long double sum = 0.0L;
  int eligible = 0;
  double value() const { return static_cast<double>(sum / eligible); }
};

inline Mean hit_rate(const std::vector<Set>& m, const std::vector<Set>& h) {
  Mean out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].empty()) continue;
    out.sum += 100.0L * intersection_size(m[i], h[i]) / static_cast<long double>(m[i].size());
    ++out.eligible;
  }
  return out;
}

struct OverlapMeans {
  Mean simpson, dice, jaccard;
};

inline OverlapMeans overlap(const std::vector<Set>& m, const std::vector<Set>& h) {
  OverlapMeans out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].empty() || h[i].empty()) continue;
    const long double inter = intersection_size(m[i], h[i]);
    const long double sm = m[i].size(), sh = h[i].size();
    out.simpson.sum += inter / std::min(sm, sh);
    out.dice.sum += 2.0L * inter / (sm + sh);
    out.jaccard.sum += inter / union_size(m[i], h[i]);
    ++out.simpson.eligible;
    ++out.dice.eligible;
    ++out.jaccard.eligible;
  }
  return out;
}

struct MicroCounts {
  long long tp = 0, fp = 0, fn = 0;
  Ratio precision() const { return {tp, tp + fp == 0 ? 1 : tp + fp}; }
  Ratio recall() const { return {tp, tp + fn == 0 ? 1 : tp + fn}; }
  // F1 = 2TP / (2TP + FP + FN), which equals the harmonic mean of P and R.
  Ratio f1() const { return {2 * tp, 2 * tp + fp + fn == 0 ? 1 : 2 * tp + fp + fn}; }
};

// Cell-by-cell over a universe of `codes` integer codes.
inline MicroCounts micro(const std::vector<Set>& m, const std::vector<Set>& h, int codes) {
  MicroCounts c;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (int code = 0; code < codes; ++code) {
      const bool pm = m[i].count(code) > 0, ph = h[i].count(code) > 0;
      if (pm && ph) ++c.tp;
      if (pm && !ph) ++c.fp;
      if (!pm && ph) ++c.fn;
    }
  }
  return c;
}

}  // namespace voicelens::testing::oracle
