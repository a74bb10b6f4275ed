#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qsum/params.hpp"
#include "qsum/qpoch.hpp"

namespace qsum {

template <typename T>
struct BoxSum {
  T value{};
  double abs_mass = 0;
  double boundary_mass = 0;       // |terms| on the outermost layer
  std::vector<double> face_mass;  // 2 entries per axis: lo face, hi face
};

// Row-decomposed reduction over a box.  The innermost axis is summed
// serially within each row, and rows are folded in row-major order, so the
// value is independent of the number of OpenMP workers.
template <typename T, typename TermFn>
BoxSum<T> sum_box(const LatticeBox& box, const TermFn& term) {
  const long r = box.axes();
  const size_t nfaces = size_t(2 * r);
  long rows = 1;
  for (long i = 0; i + 1 < r; ++i) rows *= box.hi[size_t(i)] - box.lo[size_t(i)] + 1;

  struct Row {
    T value{};
    double abs_mass = 0, boundary_mass = 0;
    std::vector<double> face_mass;
    std::string error;
  };
  std::vector<Row> out(size_t(rows));

#pragma omp parallel for schedule(static)
  for (long row = 0; row < rows; ++row) {
    Row& rr = out[size_t(row)];
    rr.face_mass.assign(nfaces, 0.0);
    std::vector<long> k(size_t(r));
    long idx = row;
    for (long i = r - 2; i >= 0; --i) {
      long len = box.hi[size_t(i)] - box.lo[size_t(i)] + 1;
      k[size_t(i)] = box.lo[size_t(i)] + idx % len;
      idx /= len;
    }
    try {
      for (long kr = box.lo[size_t(r - 1)]; kr <= box.hi[size_t(r - 1)]; ++kr) {
        k[size_t(r - 1)] = kr;
        QPochValue<T> t = term(std::span<const long>(k));
        if (t.is_pole())
          throw pole_error("lattice term carries a net pole (degenerate parameters)");
        if (t.is_zero()) continue;
        rr.value = rr.value + t.reg;
        double ta = abs_approx(t.reg);
        if (ta > 1e250) throw domain_error("lattice terms diverge");
        rr.abs_mass += ta;
        bool boundary = false;
        for (long i = 0; i < r; ++i) {
          if (k[size_t(i)] == box.lo[size_t(i)]) {
            rr.face_mass[size_t(2 * i)] += ta;
            boundary = true;
          }
          if (k[size_t(i)] == box.hi[size_t(i)]) {
            rr.face_mass[size_t(2 * i + 1)] += ta;
            boundary = true;
          }
        }
        if (boundary) rr.boundary_mass += ta;
      }
    } catch (const std::exception& ex) {
      rr.error = ex.what();
    }
  }

  BoxSum<T> total;
  total.face_mass.assign(nfaces, 0.0);
  for (const Row& rr : out) {
    if (!rr.error.empty()) throw pole_error(rr.error);
    total.value = total.value + rr.value;
    total.abs_mass += rr.abs_mass;
    total.boundary_mass += rr.boundary_mass;
    for (size_t f = 0; f < nfaces; ++f) total.face_mass[f] += rr.face_mass[f];
  }
  return total;
}

template <typename T>
struct ShellSumResult {
  T value{};
  double est = 0;
  long shells = 0;
};

// Sums a unilateral lattice series by shells of constant |k|.  The series
// argument enters as w^{|k|}, so shell sums decay roughly geometrically;
// shells can cancel internally, which is why convergence is judged on
// shell sums rather than single terms.
template <typename T, typename PrepareFn, typename TermFn>
ShellSumResult<T> sum_shells(long r, const PrepareFn& prepare, const TermFn& term,
                             const TailConfig& cfg, long max_shells = 600) {
  constexpr int kShellWindow = 3;
  T total{};
  double last_abs = 0, ratio_hat = 0, small_max = 0;
  int small_run = 0;
  std::vector<long> k(size_t(r));

  for (long s = 0; s < max_shells; ++s) {
    prepare(s);
    T shell{};
    std::fill(k.begin(), k.end(), 0L);
    k[0] = s;
    while (true) {
      QPochValue<T> t = term(std::span<const long>(k));
      if (t.is_pole())
        throw pole_error("lattice term carries a net pole (degenerate parameters)");
      if (!t.is_zero()) shell = shell + t.reg;
      long j = -1;
      for (long i = 0; i + 1 < r; ++i)
        if (k[size_t(i)] > 0) {
          j = i;
          break;
        }
      if (j < 0) break;
      long tj = k[size_t(j)];
      k[size_t(j)] = 0;
      k[0] = tj - 1;
      k[size_t(j) + 1] += 1;
    }
    total = total + shell;

    double sa = abs_approx(shell);
    if (sa > 1e250) throw domain_error("lattice shells diverge");
    if (sa > 0 && last_abs > 0) ratio_hat = std::max(ratio_hat * 0.5, sa / last_abs);
    if (sa > 0) last_abs = sa;
    bool small = sa == 0.0 || (!is_exact_v<T> && sa <= cfg.eps_tail * abs_approx(total));
    if (small) {
      small_run += 1;
      small_max = std::max(small_max, sa);
    } else {
      small_run = 0;
      small_max = 0;
    }
    if (small_run >= kShellWindow && s >= kShellWindow) {
      double est = 4.0 * small_max + cfg.eps_tail * abs_approx(total);
      return {total, est, s + 1};
    }
  }
  throw domain_error("lattice shell sum did not converge within the shell cap");
}

}  // namespace qsum
