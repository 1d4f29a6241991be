#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gcpi/oracle.hpp"

using namespace gcpi;

namespace {
const Cplx I(0.0, 1.0);
}

TEST_SUITE("oracle") {

TEST_CASE("free spin evolution") {
  SpinFieldModel model{1.7, ConstantField{Cplx(0.0)}};
  const SpinKernel k = propagate_spin_exact(model, 2.0);
  CHECK(std::abs(k.U(0, 0) - Cplx(1.0)) < 1e-12);
  CHECK(std::abs(k.U(1, 1) - std::exp(-I * 1.7 * 2.0)) < 1e-12);
  CHECK(std::abs(k.U(0, 1)) < 1e-12);
  CHECK(std::abs(k.U(1, 0)) < 1e-12);
}

TEST_CASE("pure transverse field rotates as exp(-i B t sigma_x)") {
  const double b = 0.5, t = 2.0;
  SpinFieldModel model{0.0, ConstantField{Cplx(b, 0.0)}};
  const SpinKernel k = propagate_spin_exact(model, t);
  CHECK(std::abs(k.U(0, 0) - std::cos(b * t)) < 1e-10);
  CHECK(std::abs(k.U(1, 1) - std::cos(b * t)) < 1e-10);
  CHECK(std::abs(k.U(0, 1) - (-I * std::sin(b * t))) < 1e-10);
  CHECK(std::abs(k.U(1, 0) - (-I * std::sin(b * t))) < 1e-10);
}

TEST_CASE("integrator self-convergence is fourth order") {
  SpinFieldModel model{1.0, SinusoidField{0.8, 1.3, 0.4}};
  const double t = 2.0;
  const SpinKernel u1 = propagate_spin_exact(model, t, 4e-3);
  const SpinKernel u2 = propagate_spin_exact(model, t, 2e-3);
  const SpinKernel u3 = propagate_spin_exact(model, t, 1e-3);
  const double e1 = max_entry_dev(u1, u2);
  const double e2 = max_entry_dev(u2, u3);
  const double ratio = e1 / e2;
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("spin oracle unitarity") {
  SpinFieldModel model{1.0, SinusoidField{1.0, 0.9, 0.0}};
  for (double t : {1.0, 2.0, 3.0}) {
    const SpinKernel k = propagate_spin_exact(model, t);
    CHECK(unitarity_defect(k) < 1e-10);
  }
}

TEST_CASE("jc free evolution and the uncoupled ground level") {
  JaynesCummingsModel model{1.3, 0.9, 0.0};
  const double t = 1.7;
  const FockPropagator fock = propagate_jc_exact(model, t, 10);
  for (int n = 0; n <= 9; ++n) {
    for (int s = 0; s <= 1; ++s) {
      const Cplx expected = std::exp(-I * (n * model.omega + s * model.omega_o) * t);
      CHECK(std::abs(fock.U(fock_index(n, s), fock_index(n, s)) - expected) < 1e-12);
    }
  }

  JaynesCummingsModel coupled{1.3, 0.9, 0.7};
  const FockPropagator fc = propagate_jc_exact(coupled, t, 10);
  CHECK(std::abs(fc.U(fock_index(0, 0), fock_index(0, 0)) - Cplx(1.0)) == 0.0);
}

TEST_CASE("resonant vacuum Rabi flipping") {
  JaynesCummingsModel model{1.0, 1.0, 0.8};
  for (double t : {0.5, 1.0, 2.5}) {
    const FockPropagator fock = propagate_jc_exact(model, t, 10);
    const double p = std::norm(fock.U(fock_index(1, 0), fock_index(0, 1)));
    CHECK(std::abs(p - std::pow(std::sin(model.lam * t), 2)) < 1e-12);
  }
}

TEST_CASE("excitation blocks never mix") {
  JaynesCummingsModel model{1.2, 0.9, 0.6};
  const FockPropagator fock = propagate_jc_exact(model, 1.4, 8);
  const auto block_of = [](int n, int s) { return n + s; }; // excitation number
  const int dim = 2 * (fock.n_max + 1);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      if (block_of(r / 2, r % 2) != block_of(c / 2, c % 2))
        CHECK(fock.U(r, c) == Cplx(0.0));
    }
  }
}

TEST_CASE("fock truncation self-convergence") {
  JaynesCummingsModel model{1.1, 1.0, 0.9};
  const Cplx z_i(0.7, 0.5); // |z_i| < 1
  const JcKernelTable t40 =
      kernel_table_from_matrix(propagate_jc_exact(model, 3.0, 40), z_i, 12);
  const JcKernelTable t50 =
      kernel_table_from_matrix(propagate_jc_exact(model, 3.0, 50), z_i, 12);
  CHECK(max_table_dev(t40, t50) < 1e-9);
}

TEST_CASE("kernel table at t = 0 is the overlap kernel") {
  JaynesCummingsModel model{1.0, 0.8, 0.5};
  const Cplx z_i(0.4, -0.2);
  const JcKernelTable table =
      kernel_table_from_matrix(propagate_jc_exact(model, 0.0, 20), z_i, 8);
  double inv_fact = 1.0;
  Cplx z_pow(1.0);
  for (int m = 0; m <= 8; ++m) {
    if (m > 0) {
      inv_fact /= m;
      z_pow *= z_i;
    }
    CHECK(std::abs(table.A[m] - z_pow * inv_fact) < 1e-12);
    CHECK(std::abs(table.D[m] - z_pow * inv_fact) < 1e-12);
    CHECK(std::abs(table.B[m]) == 0.0);
    CHECK(std::abs(table.C[m]) == 0.0);
  }
}

TEST_CASE("kernel table for the decoupled vacuum") {
  JaynesCummingsModel model{1.3, 0.9, 0.0};
  const double t = 2.1;
  const JcKernelTable table =
      kernel_table_from_matrix(propagate_jc_exact(model, t, 20), Cplx(0.0), 6);
  CHECK(std::abs(table.A[0] - Cplx(1.0)) < 1e-12);
  CHECK(std::abs(table.D[0] - std::exp(-I * model.omega_o * t)) < 1e-12);
  for (int m = 1; m <= 6; ++m) {
    CHECK(std::abs(table.A[m]) < 1e-14);
    CHECK(std::abs(table.D[m]) < 1e-14);
  }
}

TEST_CASE("truncation guard") {
  JaynesCummingsModel model{1.0, 1.0, 0.5};
  const FockPropagator fock = propagate_jc_exact(model, 1.0, 10);
  CHECK_THROWS_AS(kernel_table_from_matrix(fock, Cplx(0.1), 9), std::invalid_argument);
  CHECK_THROWS_AS(propagate_jc_exact(model, 1.0, 1), std::invalid_argument);
}

} // TEST_SUITE
