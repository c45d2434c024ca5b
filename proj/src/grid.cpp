#include "ffwd/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ffwd/errors.hpp"

namespace ffwd {

Grid Grid::uniform(double lo, double hi, Index n, const std::vector<double>& break_points) {
  if (n < 2 || !(hi > lo)) throw StepSizeError("Grid::uniform: need n >= 2 and hi > lo");
  Grid g;
  g.step = (hi - lo) / static_cast<double>(n - 1);
  g.x.resize(n);
  for (Index i = 0; i < n; ++i) g.x(i) = lo + g.step * static_cast<double>(i);
  g.x(n - 1) = hi;
  for (double b : break_points) {
    if (b <= lo || b >= hi) continue;
    g.breaks.push_back(g.node(b));
  }
  std::sort(g.breaks.begin(), g.breaks.end());
  g.breaks.erase(std::unique(g.breaks.begin(), g.breaks.end()), g.breaks.end());
  return g;
}

bool Grid::is_break(Index i) const { return std::find(breaks.begin(), breaks.end(), i) != breaks.end(); }

Index Grid::node(double xv) const {
  const double pos = (xv - front()) / step;
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) > 1e-9 || nearest < 0 || nearest > static_cast<double>(size() - 1))
    throw StepSizeError("Grid::node: x = " + std::to_string(xv) + " is not a grid node");
  return static_cast<Index>(nearest);
}

Grid Grid::refined(int factor) const {
  std::vector<double> bp;
  for (Index b : breaks) bp.push_back(x(b));
  return uniform(front(), back(), (size() - 1) * factor + 1, bp);
}

}  // namespace ffwd
