#include "overshoot/gridmax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "overshoot/common.hpp"

namespace overshoot {

namespace {

struct Cell {
  double lo, hi;
};

}  // namespace

CertifiedMax certified_grid_max(const std::function<double(double)>& f, double lo,
                                double hi, double lipschitz, double target_step,
                                int threads, int coarse_points, int refine_ratio) {
  if (!(hi >= lo)) throw std::invalid_argument("certified_grid_max: empty interval");
  if (lo == hi) return {f(lo), lo, 0.0, 0.0, 1};
  if (!(lipschitz > 0.0)) throw std::invalid_argument("certified_grid_max: need a positive Lipschitz bound");
  if (!(target_step > 0.0)) throw std::invalid_argument("certified_grid_max: need a positive target step");
  if (coarse_points < 2 || refine_ratio < 2)
    throw std::invalid_argument("certified_grid_max: bad staging parameters");

  std::vector<Cell> cells{{lo, hi}};
  double h = std::max((hi - lo) / (coarse_points - 1), target_step);
  CertifiedMax out;

  for (;;) {
    // Lay an inclusive uniform grid of step <= h over every surviving cell.
    std::vector<double> ts;
    for (const Cell& c : cells) {
      double len = c.hi - c.lo;
      int npts = std::max(2, static_cast<int>(std::ceil(len / h)) + 1);
      for (int i = 0; i < npts; ++i) ts.push_back(c.lo + len * i / (npts - 1));
    }
    std::vector<double> vs(ts.size());
    parallel_chunks(static_cast<std::int64_t>(ts.size()), threads,
                    [&](std::int64_t b, std::int64_t e, int) {
                      for (std::int64_t i = b; i < e; ++i)
                        vs[static_cast<std::size_t>(i)] = f(ts[static_cast<std::size_t>(i)]);
                    });
    out.evaluations += static_cast<std::int64_t>(ts.size());

    std::size_t best = 0;
    for (std::size_t i = 1; i < vs.size(); ++i)
      if (vs[i] > vs[best]) best = i;

    if (h <= target_step) {
      out.value = vs[best];
      out.arg = ts[best];
      out.final_step = h;
      out.cert_error = lipschitz * h / 2.0;
      return out;
    }

    // Only samples within lipschitz*h/2 of the best can own the supremum.
    double cutoff = vs[best] - lipschitz * h / 2.0;
    std::vector<Cell> next;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i] < cutoff) continue;
      Cell c{std::max(lo, ts[i] - h / 2.0), std::min(hi, ts[i] + h / 2.0)};
      if (!next.empty() && c.lo <= next.back().hi)
        next.back().hi = std::max(next.back().hi, c.hi);
      else
        next.push_back(c);
    }
    cells = std::move(next);
    h = std::max(target_step, h / refine_ratio);
  }
}

}  // namespace overshoot
