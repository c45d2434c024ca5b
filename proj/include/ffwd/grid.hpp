#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace ffwd {

template <typename Scalar>
using Field = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using RealField = Field<double>;
using ComplexField = Field<std::complex<double>>;
using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Uniform 1D grid. `breaks` lists interior node indices where first spatial
/// derivatives of the sampled fields may jump (delta supports); difference
/// stencils and quadrature panels never straddle them.
struct Grid {
  RealField x;
  double step = 0.0;
  std::vector<Index> breaks;

  static Grid uniform(double lo, double hi, Index n, const std::vector<double>& break_points = {});

  Index size() const { return x.size(); }
  double front() const { return x(0); }
  double back() const { return x(x.size() - 1); }
  bool is_break(Index i) const;

  /// Node index whose coordinate equals `xv` to within 1e-9 of a step.
  /// Throws StepSizeError when `xv` is not a grid node.
  Index node(double xv) const;

  /// Same grid with `factor` times as many intervals.
  Grid refined(int factor) const;
};

}  // namespace ffwd
