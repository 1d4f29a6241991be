#pragma once
// Independent ground truth: direct matrix propagation for the spin model
// and exact block propagation on a truncated Fock space for the
// Jaynes-Cummings model, plus conversion of matrix propagators into the
// kernel representations used by the path-integral modules.

#include <Eigen/Dense>

#include "gcpi/kernels.hpp"
#include "gcpi/models.hpp"

namespace gcpi {

// Truncated-Fock propagator; basis |n> x |s> ordered (n, s) lexicographic,
// index(n, s) = 2 n + s with s: 0 = down, 1 = up. Unitary except for the
// top Fock levels, which see the truncation.
struct FockPropagator {
  int n_max = 0;
  Eigen::MatrixXcd U;
};

inline int fock_index(int n, int s) { return 2 * n + s; }

// Closed-form exp(-i H t) for a constant complex field (2x2
// eigendecomposition of the traceless part).
Eigen::Matrix2cd constant_field_propagator(double omega, Cplx b, double t);

// Integrates i dU/dt = H(t) U with a classical fixed-step 4th-order method,
// H = w |up><up| + B(t) |up><down| + B*(t) |down><up|. For a constant field
// the closed form is computed as well and agreement to 1e-10 is enforced.
SpinKernel propagate_spin_exact(const SpinFieldModel& model, double t, double dt = 1e-4);

// Exact block-diagonal propagator: the invariant 2x2 blocks span
// {|n, up>, |n+1, down>} with coupling lam * sqrt(n+1); |0, down> is
// uncoupled at zero energy; the top |n_max, up> level keeps its free phase.
FockPropagator propagate_jc_exact(const JaynesCummingsModel& model, double t, int n_max = 40);

// Kernel table of the matrix propagator between unnormalised coherent
// states, A_m = sum_j z_i^j U_{(m,down),(j,down)} / sqrt(m! j!) and the
// corresponding up-sector combinations. Requires m_max <= n_max - 2.
JcKernelTable kernel_table_from_matrix(const FockPropagator& fock, Cplx z_i, int m_max);

} // namespace gcpi
