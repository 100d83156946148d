#pragma once

#include <complex>

#include <Eigen/Core>

namespace holo {

using Complex = std::complex<double>;

template <int N>
concept SupportedDim = (N == 2 || N == 4);

/// Dense complex square matrix. Only the 2x2 subspace blocks and the 4x4
/// level-space operators are ever needed, so the size is part of the type.
template <int N>
  requires SupportedDim<N>
using CMat = Eigen::Matrix<Complex, N, N>;

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;

// Default tolerances shared by the whole library.
inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kConformanceTol = 1e-8;
inline constexpr double kFiniteDifferenceTol = 1e-6;

/// The two degenerate eigenspaces of H0 = w/2 diag(1, 1, -1, -1):
/// plus spans levels |1>,|2> (energy +w/2), minus spans |3>,|4> (energy -w/2).
enum class Subspace { plus, minus };

template <int N>
CMat<N> identity() {
  return CMat<N>::Identity();
}

template <int N>
CMat<N> dagger(const CMat<N>& m) {
  return m.adjoint();
}

/// Frobenius norm of u - v.
template <int N>
double unitary_distance(const CMat<N>& u, const CMat<N>& v) {
  return (u - v).norm();
}

/// ||m + m^dagger||_F; zero for anti-hermitian m.
template <int N>
double antihermiticity_residual(const CMat<N>& m) {
  return (m + m.adjoint()).norm();
}

/// ||m - m^dagger||_F; zero for hermitian m.
template <int N>
double hermiticity_residual(const CMat<N>& m) {
  return (m - m.adjoint()).norm();
}

/// ||u^dagger u - I||_F.
template <int N>
double unitarity_residual(const CMat<N>& u) {
  return (u.adjoint() * u - CMat<N>::Identity()).norm();
}

template <int N>
CMat<N> antihermitian_part(const CMat<N>& m) {
  return 0.5 * (m - m.adjoint());
}

template <int N>
CMat<N> commutator(const CMat<N>& a, const CMat<N>& b) {
  return a * b - b * a;
}

/// Largest elementwise modulus of a - b.
template <int N>
double max_abs_difference(const CMat<N>& a, const CMat<N>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// exp(m) for anti-hermitian m, via the eigendecomposition of the hermitian
/// matrix -i m. Throws ErrorKind::not_anti_hermitian when
/// max |m + m^dagger| exceeds tol.
CMat2 expm_antihermitian(const CMat2& m, double tol = kStructuralTol);
CMat4 expm_antihermitian(const CMat4& m, double tol = kStructuralTol);

/// Eigenvalues of a hermitian matrix in ascending order.
Eigen::Vector2d hermitian_eigenvalues(const CMat2& h);
Eigen::Vector4d hermitian_eigenvalues(const CMat4& h);

/// Closest unitary in Frobenius norm (unitary factor of the polar
/// decomposition). Requires m to be invertible.
CMat2 polar_unitary(const CMat2& m);

/// Rows/columns {1,2} for plus, {3,4} for minus.
CMat2 subspace_block(const CMat4& m, Subspace s);

/// Off-diagonal 2x2 corners (plus<-minus and minus<-plus) as one Frobenius norm.
double off_block_norm(const CMat4& m);

}  // namespace holo
