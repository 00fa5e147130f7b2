#pragma once

// Second derivatives of U - lambda I in a global chart, restriction to the
// tangent space of the level set {I = c}, and inertia bookkeeping.

#include <Eigen/Core>
#include <vector>

#include "cch2/geometry.hpp"
#include "cch2/types.hpp"

namespace cch2 {

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  int n_minus = 0;
  int n_zero = 0;
  int n_plus = 0;
  double zero_tolerance = 0.0;
  bool nondegenerate = false;  // n_zero == 1
  bool marginal = false;       // some eigenvalue within 10x of the threshold
};

struct ConstrainedHessian {
  Eigen::MatrixXd matrix;  // (2N-1) x (2N-1), symmetric
  Eigen::MatrixXd basis;   // 2N x (2N-1), columns mass-orthonormal, dI-annihilated
  ChartTag chart_tag = ChartTag::Graph;
  // The restriction computes the intrinsic second derivative only at
  // restpoints of X; elsewhere the matrix is still returned but flagged.
  bool at_critical_point = false;
};

// Chart partials of U: true partial derivatives d U / d u_{i,a}, stacked
// coordinate-major (length 2N).  Same for I.
Eigen::VectorXd chart_grad_U(const Configuration& q, ChartTag tag);
Eigen::VectorXd chart_grad_I(const Configuration& q, ChartTag tag);

// 2N x 2N matrix of second partials of U - lambda I with lambda frozen at
// lambda_value(q).  Coordinate-major index order (chart_index).
Eigen::MatrixXd hessian_chart(const Configuration& q, ChartTag tag);

// Pieces, mostly for cross-checks: second partials of U alone and I alone.
Eigen::MatrixXd chart_hessian_U(const Configuration& q, ChartTag tag);
Eigen::MatrixXd chart_hessian_I(const Configuration& q, ChartTag tag);

// Mass metric in chart components: block diagonal with 2x2 blocks
// m_i J_i^T diag(1,1,-1) J_i.
Eigen::MatrixXd chart_mass_metric(const Configuration& q, ChartTag tag);

// 2N x (2N-1) basis of ker(dI) inside the chart tangent space, orthonormal
// in the chart mass metric.  Throws DegenerateDenominator when grad I ~ 0.
Eigen::MatrixXd tangent_basis(const Configuration& q, ChartTag tag);

ConstrainedHessian constrained_hessian(const Configuration& q,
                                       ChartTag tag = ChartTag::Graph);

// Eigenvalues and inertia of a symmetric matrix.  zero_tolerance is
// zero_tol_factor * max(|eigenvalue|, 1).  Throws NonSymmetricError when the
// input is asymmetric beyond 1e-10 (relative).
SpectrumReport spectrum_of(const Eigen::MatrixXd& sym, double zero_tol_factor = 1e-7);
SpectrumReport spectrum(const ConstrainedHessian& h, double zero_tol_factor = 1e-7);

// Derivative of the rotation orbit: v_i = (-y_i, x_i, 0).  Always in the
// kernel of the constrained Hessian at a central configuration.
TangentVector rotation_null_vector(const Configuration& q);

// Chart components of a tangent vector (solves J_i c_i = v_i per body).
Eigen::VectorXd tangent_chart_components(const Configuration& q,
                                         const TangentVector& v, ChartTag tag);

}  // namespace cch2
