#include "holo/matrix.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "holo/errors.hpp"

namespace holo {
namespace {

template <int N>
CMat<N> expm_antihermitian_impl(const CMat<N>& m, double tol) {
  const double residual = (m + m.adjoint()).cwiseAbs().maxCoeff();
  if (!(residual <= tol)) {
    std::ostringstream msg;
    msg << "expm_antihermitian: input is not anti-hermitian (max |m + m^dagger| = "
        << residual << ", tolerance " << tol << ")";
    raise(ErrorKind::not_anti_hermitian, msg.str());
  }
  // m = i h with h hermitian, so exp(m) = V diag(exp(i lambda)) V^dagger.
  const CMat<N> h = Complex(0.0, -1.0) * m;
  const CMat<N> h_sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat<N>> solver(h_sym);
  const auto& v = solver.eigenvectors();
  Eigen::Matrix<Complex, N, 1> phases;
  for (int k = 0; k < N; ++k) {
    phases(k) = std::polar(1.0, solver.eigenvalues()(k));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

template <int N>
Eigen::Matrix<double, N, 1> eigenvalues_impl(const CMat<N>& h) {
  const CMat<N> h_sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat<N>> solver(h_sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

CMat2 expm_antihermitian(const CMat2& m, double tol) {
  return expm_antihermitian_impl<2>(m, tol);
}

CMat4 expm_antihermitian(const CMat4& m, double tol) {
  return expm_antihermitian_impl<4>(m, tol);
}

Eigen::Vector2d hermitian_eigenvalues(const CMat2& h) { return eigenvalues_impl<2>(h); }

Eigen::Vector4d hermitian_eigenvalues(const CMat4& h) { return eigenvalues_impl<4>(h); }

CMat2 polar_unitary(const CMat2& m) {
  // m = W P with P = (m^dagger m)^{1/2}; W = m P^{-1}.
  const CMat2 gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMat2> solver(0.5 * (gram + gram.adjoint()));
  const auto& v = solver.eigenvectors();
  Eigen::Vector2cd inv_sqrt;
  for (int k = 0; k < 2; ++k) {
    const double lambda = solver.eigenvalues()(k);
    if (!(lambda > 0.0)) {
      raise(ErrorKind::invalid_argument, "polar_unitary: matrix is singular");
    }
    inv_sqrt(k) = 1.0 / std::sqrt(lambda);
  }
  return m * (v * inv_sqrt.asDiagonal() * v.adjoint());
}

CMat2 subspace_block(const CMat4& m, Subspace s) {
  const int offset = (s == Subspace::plus) ? 0 : 2;
  return m.block<2, 2>(offset, offset);
}

double off_block_norm(const CMat4& m) {
  const double upper = m.block<2, 2>(0, 2).squaredNorm();
  const double lower = m.block<2, 2>(2, 0).squaredNorm();
  return std::sqrt(upper + lower);
}

}  // namespace holo
