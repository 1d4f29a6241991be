#pragma once
// Shared kernel representations: the 2x2 spin propagator and the
// Jaynes-Cummings coefficient table over powers of the final boson variable.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "gcpi/algebra.hpp"

namespace gcpi {

// Basis convention: index 0 = down, 1 = up. As a coherent-state kernel,
// K(etabar_f, eta_i) = U00 + etabar_f U10 + U01 eta_i + etabar_f eta_i U11.
struct SpinKernel {
  Eigen::Matrix2cd U = Eigen::Matrix2cd::Identity();
};

// Coefficient table of K(etabar_f, zbar_f) = sum_m zbar_f^m (A_m
// + B_m eta_i + C_m etabar_f + D_m etabar_f eta_i). Sectors: A down<-down,
// B down<-up, C up<-down, D up<-up.
struct JcKernelTable {
  std::vector<Cplx> A, B, C, D;
  int m_max() const { return static_cast<int>(A.size()) - 1; }
};

inline SpinKernel kernel_from_coeffs(const KernelCoeffs& k) {
  SpinKernel out;
  out.U << k.k00, k.k01, k.k10, k.k11;
  return out;
}

inline double max_entry_dev(const SpinKernel& a, const SpinKernel& b) {
  return (a.U - b.U).cwiseAbs().maxCoeff();
}

inline double unitarity_defect(const SpinKernel& k) {
  return (k.U.adjoint() * k.U - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

double max_table_dev(const JcKernelTable& a, const JcKernelTable& b);

// Evaluates the four kernel sectors at a numeric zbar_f.
KernelCoeffs evaluate_table(const JcKernelTable& table, Cplx z_bar_f);

} // namespace gcpi
