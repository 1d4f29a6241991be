#include "gcpi/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace gcpi {

namespace {

constexpr Cplx kI(0.0, 1.0);

Eigen::Matrix2cd spin_hamiltonian(const SpinFieldModel& model, double t) {
  const Cplx b = field_at(model, t);
  Eigen::Matrix2cd h;
  h << Cplx(0.0), std::conj(b), b, Cplx(model.omega);
  return h;
}

// exp(-i H t) for hermitian 2x2 H via trace / traceless split.
Eigen::Matrix2cd expm_2x2(const Eigen::Matrix2cd& h, double t) {
  const Cplx mu = 0.5 * (h(0, 0) + h(1, 1));
  Eigen::Matrix2cd m = h - mu * Eigen::Matrix2cd::Identity();
  const double omega2 = std::real(m(0, 0) * m(0, 0) + m(0, 1) * m(1, 0));
  const double omega = std::sqrt(std::max(omega2, 0.0));
  const double x = omega * t;
  double sinc;
  if (std::abs(x) < 1e-6) {
    sinc = t * (1.0 - x * x / 6.0);
  } else {
    sinc = std::sin(x) / omega;
  }
  return std::exp(-kI * mu * t) *
         (std::cos(x) * Eigen::Matrix2cd::Identity() - kI * sinc * m);
}

} // namespace

Eigen::Matrix2cd constant_field_propagator(double omega, Cplx b, double t) {
  Eigen::Matrix2cd h;
  h << Cplx(0.0), std::conj(b), b, Cplx(omega);
  return expm_2x2(h, t);
}

SpinKernel propagate_spin_exact(const SpinFieldModel& model, double t, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("propagate_spin_exact: dt must be positive");
  const int n = std::max(1, static_cast<int>(std::ceil(t / dt - 1e-12)));
  const double h = t / n;

  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  const auto rhs = [&](double s, const Eigen::Matrix2cd& v) -> Eigen::Matrix2cd {
    return -kI * (spin_hamiltonian(model, s) * v);
  };
  for (int k = 0; k < n; ++k) {
    const double s = k * h;
    const Eigen::Matrix2cd k1 = rhs(s, u);
    const Eigen::Matrix2cd k2 = rhs(s + 0.5 * h, u + 0.5 * h * k1);
    const Eigen::Matrix2cd k3 = rhs(s + 0.5 * h, u + 0.5 * h * k2);
    const Eigen::Matrix2cd k4 = rhs(s + h, u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  if (const auto* c = std::get_if<ConstantField>(&model.field)) {
    const Eigen::Matrix2cd closed = constant_field_propagator(model.omega, c->value, t);
    if ((u - closed).cwiseAbs().maxCoeff() > 1e-10)
      throw std::logic_error("propagate_spin_exact: integrator disagrees with closed form");
    u = closed;
  }
  return SpinKernel{u};
}

FockPropagator propagate_jc_exact(const JaynesCummingsModel& model, double t, int n_max) {
  if (n_max < 2) throw std::invalid_argument("propagate_jc_exact: n_max must be >= 2");
  const int dim = 2 * (n_max + 1);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);

  // Uncoupled zero-energy level |0, down>.
  u(fock_index(0, 0), fock_index(0, 0)) = Cplx(1.0);

  for (int n = 0; n + 1 <= n_max; ++n) {
    const int ia = fock_index(n, 1);
    const int ib = fock_index(n + 1, 0);
    const double g = model.lam * std::sqrt(double(n + 1));
    Eigen::Matrix2cd h;
    h << Cplx(n * model.omega + model.omega_o), Cplx(g), Cplx(g),
        Cplx((n + 1) * model.omega);
    const Eigen::Matrix2cd block = expm_2x2(h, t);
    u(ia, ia) = block(0, 0);
    u(ia, ib) = block(0, 1);
    u(ib, ia) = block(1, 0);
    u(ib, ib) = block(1, 1);
  }

  // Free phase for the orphaned top level.
  const int top = fock_index(n_max, 1);
  u(top, top) = std::exp(-kI * (n_max * model.omega + model.omega_o) * t);

  return FockPropagator{n_max, std::move(u)};
}

JcKernelTable kernel_table_from_matrix(const FockPropagator& fock, Cplx z_i, int m_max) {
  if (m_max > fock.n_max - 2)
    throw std::invalid_argument("kernel_table_from_matrix: m_max must be <= n_max - 2");
  if (m_max < 0) throw std::invalid_argument("kernel_table_from_matrix: m_max must be >= 0");

  // inv_sqrt_fact[k] = 1 / sqrt(k!)
  std::vector<double> inv_sqrt_fact(fock.n_max + 1);
  inv_sqrt_fact[0] = 1.0;
  for (int k = 1; k <= fock.n_max; ++k)
    inv_sqrt_fact[k] = inv_sqrt_fact[k - 1] / std::sqrt(double(k));

  JcKernelTable table;
  table.A.assign(m_max + 1, Cplx(0.0));
  table.B.assign(m_max + 1, Cplx(0.0));
  table.C.assign(m_max + 1, Cplx(0.0));
  table.D.assign(m_max + 1, Cplx(0.0));

  for (int m = 0; m <= m_max; ++m) {
    Cplx z_pow(1.0);
    for (int j = 0; j <= fock.n_max; ++j) {
      const Cplx w = z_pow * inv_sqrt_fact[m] * inv_sqrt_fact[j];
      table.A[m] += w * fock.U(fock_index(m, 0), fock_index(j, 0));
      table.B[m] += w * fock.U(fock_index(m, 0), fock_index(j, 1));
      table.C[m] += w * fock.U(fock_index(m, 1), fock_index(j, 0));
      table.D[m] += w * fock.U(fock_index(m, 1), fock_index(j, 1));
      z_pow *= z_i;
    }
  }
  return table;
}

double max_table_dev(const JcKernelTable& a, const JcKernelTable& b) {
  if (a.A.size() != b.A.size())
    throw std::invalid_argument("max_table_dev: mismatched table sizes");
  double dev = 0.0;
  for (std::size_t m = 0; m < a.A.size(); ++m) {
    dev = std::max(dev, std::abs(a.A[m] - b.A[m]));
    dev = std::max(dev, std::abs(a.B[m] - b.B[m]));
    dev = std::max(dev, std::abs(a.C[m] - b.C[m]));
    dev = std::max(dev, std::abs(a.D[m] - b.D[m]));
  }
  return dev;
}

KernelCoeffs evaluate_table(const JcKernelTable& table, Cplx z_bar_f) {
  KernelCoeffs k;
  Cplx zb_pow(1.0);
  for (std::size_t m = 0; m < table.A.size(); ++m) {
    k.k00 += zb_pow * table.A[m];
    k.k01 += zb_pow * table.B[m];
    k.k10 += zb_pow * table.C[m];
    k.k11 += zb_pow * table.D[m];
    zb_pow *= z_bar_f;
  }
  return k;
}

} // namespace gcpi
