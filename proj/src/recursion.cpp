#include "gcpi/recursion.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace gcpi {

namespace {

constexpr Cplx kI(0.0, 1.0);

void check_symbolic_n(const TimeGrid& grid) {
  if (grid.n_steps < 1) throw std::invalid_argument("time grid needs at least one step");
  if (grid.n_steps > n_max_symbolic)
    throw std::invalid_argument("symbolic construction capped at n_max_symbolic slices");
}

void check_budget(const AlgebraElement& e) {
  if (e.term_count() > monomial_budget)
    throw std::length_error("symbolic composition exceeded the monomial budget");
}

} // namespace

ExponentState recurse_exponent(const SpinFieldModel& model, const TimeGrid& grid,
                               FieldMode mode) {
  if (grid.n_steps < 1) throw std::invalid_argument("time grid needs at least one step");
  const double eps = grid.eps();
  const Cplx phase(1.0, -model.omega * eps);

  ExponentState s;
  s.tag = ModelTag::spin_field;
  s.eta = AlgebraElement::generator(gen::eta_in());
  s.phi_or_z = AlgebraElement{};
  for (int j = 1; j <= grid.n_steps; ++j) {
    AlgebraElement bj, bj_conj;
    if (mode == FieldMode::partners) {
      bj = make_generator(GeneratorKind::field_b, std::uint32_t(j));
      bj_conj = make_generator(GeneratorKind::field_b_conj, std::uint32_t(j));
    } else {
      const Cplx b = field_at(model, j * eps);
      bj = AlgebraElement::scalar(b);
      bj_conj = AlgebraElement::scalar(std::conj(b));
    }
    AlgebraElement eta_next = phase * s.eta + (-kI * eps) * bj;
    s.phi_or_z += (-kI * eps) * mul(bj_conj, s.eta);
    s.eta = std::move(eta_next);
    s.step = j;
  }
  return s;
}

ExponentState recurse_exponent(const JaynesCummingsModel& model, const TimeGrid& grid,
                               Cplx z_i) {
  if (grid.n_steps < 1) throw std::invalid_argument("time grid needs at least one step");
  const double eps = grid.eps();
  const Cplx spin_phase(1.0, -model.omega_o * eps);
  const Cplx mode_phase(1.0, -model.omega * eps);

  ExponentState s;
  s.tag = ModelTag::jaynes_cummings;
  s.eta = AlgebraElement::generator(gen::eta_in());
  s.phi_or_z = AlgebraElement::scalar(z_i);
  for (int j = 1; j <= grid.n_steps; ++j) {
    const AlgebraElement lam_j =
        make_generator(GeneratorKind::coupling_lambda, std::uint32_t(j));
    AlgebraElement eta_next = spin_phase * s.eta + (-kI * eps) * mul(lam_j, s.phi_or_z);
    AlgebraElement z_next = mode_phase * s.phi_or_z + (-kI * eps) * mul(lam_j, s.eta);
    s.eta = std::move(eta_next);
    s.phi_or_z = std::move(z_next);
    s.step = j;
  }
  return s;
}

AlgebraElement assemble_propagator(const ExponentState& state, Cplx z_bar_f) {
  const AlgebraElement bar_f = AlgebraElement::generator(gen::eta_bar_out());
  AlgebraElement exponent = mul(bar_f, state.eta);
  if (state.tag == ModelTag::spin_field) {
    exponent += state.phi_or_z;
  } else {
    exponent += z_bar_f * state.phi_or_z;
  }
  return exp_element(exponent);
}

AlgebraElement compose_discrete(const SpinFieldModel& model, const TimeGrid& grid,
                                FieldMode mode) {
  check_symbolic_n(grid);
  AlgebraElement acc =
      one_step_kernel_spin(model, 1, grid, mode == FieldMode::partners);
  for (int j = 2; j <= grid.n_steps; ++j) {
    const AlgebraElement next =
        one_step_kernel_spin(model, j, grid, mode == FieldMode::partners);
    acc = berezin_integrate_pair(mul(next, acc), std::uint32_t(j - 1));
    check_budget(acc);
  }
  return acc;
}

namespace {

// One spin-boson slice kernel in the bosonic-sector normal form
// exp(c zbar' z + a zbar' + b z + d); a, b, d are nilpotent even elements.
struct JcSliceKernel {
  Cplx c;
  AlgebraElement a, b, d;
};

JcSliceKernel jc_slice(const JaynesCummingsModel& model, int j, const TimeGrid& grid) {
  const double eps = grid.eps();
  const AlgebraElement bra = AlgebraElement::generator(slice_bra_generator(j, grid));
  const AlgebraElement ket = AlgebraElement::generator(slice_ket_generator(j, grid));
  const AlgebraElement lam_j =
      make_generator(GeneratorKind::coupling_lambda, std::uint32_t(j));

  JcSliceKernel s;
  s.c = Cplx(1.0, -model.omega * eps);
  s.a = (-kI * eps) * mul(lam_j, ket);
  s.b = (-kI * eps) * mul(bra, lam_j);
  s.d = Cplx(1.0, -model.omega_o * eps) * mul(bra, ket);
  return s;
}

// exp(c zbar z) times a polynomial in (zbar, z) with algebra coefficients,
// keyed by (zbar power, z power). The exponential prefactor stays scalar
// because the cross coefficient of every slice is scalar.
struct BosonComposite {
  Cplx cross;
  std::map<std::pair<int, int>, AlgebraElement> poly;
};

void add_poly_term(BosonComposite& f, int n, int m, const AlgebraElement& e) {
  if (e.is_zero()) return;
  auto [it, inserted] = f.poly.emplace(std::make_pair(n, m), e);
  if (!inserted) it->second += e;
}

// Expands exp(a zbar + b z + d) into the polynomial map; terminates by
// nilpotency of a, b, d.
std::map<std::pair<int, int>, AlgebraElement> expand_slice_poly(const JcSliceKernel& s) {
  std::map<std::pair<int, int>, AlgebraElement> acc;
  acc.emplace(std::make_pair(0, 0), AlgebraElement::scalar(1.0));

  // power[k] holds (a zbar + b z + d)^k / k! keyed by z powers
  std::map<std::pair<int, int>, AlgebraElement> power = acc;
  for (int k = 1;; ++k) {
    std::map<std::pair<int, int>, AlgebraElement> next;
    const double inv_k = 1.0 / double(k);
    for (const auto& [key, coeff] : power) {
      const auto& [n, m] = key;
      const AlgebraElement with_a = mul(coeff, s.a) * Cplx(inv_k);
      const AlgebraElement with_b = mul(coeff, s.b) * Cplx(inv_k);
      const AlgebraElement with_d = mul(coeff, s.d) * Cplx(inv_k);
      if (!with_a.is_zero()) {
        auto [it, ins] = next.emplace(std::make_pair(n + 1, m), with_a);
        if (!ins) it->second += with_a;
      }
      if (!with_b.is_zero()) {
        auto [it, ins] = next.emplace(std::make_pair(n, m + 1), with_b);
        if (!ins) it->second += with_b;
      }
      if (!with_d.is_zero()) {
        auto [it, ins] = next.emplace(std::make_pair(n, m), with_d);
        if (!ins) it->second += with_d;
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      it->second.prune();
      it = it->second.is_zero() ? next.erase(it) : std::next(it);
    }
    if (next.empty()) break;
    for (const auto& [key, coeff] : next) {
      auto [it, ins] = acc.emplace(key, coeff);
      if (!ins) it->second += coeff;
    }
    power = std::move(next);
  }
  return acc;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Integrates out the shared bosonic variable between the slice kernel
// (outer factor) and the accumulated composite, using
//   integral dmu(z) z^m zbar^p exp(u z + zbar v)
//     = exp(u v) sum_k m! p! / (k! (m-k)! (p-k)!) u^(p-k) v^(m-k)
// with u = c_slice zbar_next and v = cross z_0.
BosonComposite gaussian_compose(const JcSliceKernel& slice,
                                const std::map<std::pair<int, int>, AlgebraElement>& slice_poly,
                                const BosonComposite& f) {
  BosonComposite out;
  out.cross = slice.c * f.cross;
  for (const auto& [qkey, qcoeff] : slice_poly) {
    const auto& [n_q, m_q] = qkey;
    for (const auto& [pkey, pcoeff] : f.poly) {
      const auto& [n_f, q_f] = pkey;
      const AlgebraElement prod = mul(qcoeff, pcoeff);
      if (prod.is_zero()) continue;
      const int k_top = std::min(m_q, n_f);
      for (int k = 0; k <= k_top; ++k) {
        const double kappa = factorial(m_q) * factorial(n_f) /
                             (factorial(k) * factorial(m_q - k) * factorial(n_f - k));
        const Cplx scale = kappa * pow_int(slice.c, n_f - k) * pow_int(f.cross, m_q - k);
        add_poly_term(out, n_q + (n_f - k), q_f + (m_q - k), scale * prod);
      }
    }
  }
  return out;
}

} // namespace

AlgebraElement compose_discrete(const JaynesCummingsModel& model, const TimeGrid& grid,
                                Cplx z_i, Cplx z_bar_f) {
  check_symbolic_n(grid);

  const JcSliceKernel first = jc_slice(model, 1, grid);
  BosonComposite f;
  f.cross = first.c;
  f.poly = expand_slice_poly(first);

  for (int j = 2; j <= grid.n_steps; ++j) {
    const JcSliceKernel slice = jc_slice(model, j, grid);
    f = gaussian_compose(slice, expand_slice_poly(slice), f);
    // eliminate the spin pair shared with the previous slice
    for (auto& [key, coeff] : f.poly)
      coeff = berezin_integrate_pair(coeff, std::uint32_t(j - 1));
    for (auto it = f.poly.begin(); it != f.poly.end();)
      it = it->second.is_zero() ? f.poly.erase(it) : std::next(it);
    std::size_t total = 0;
    for (const auto& [key, coeff] : f.poly) total += coeff.term_count();
    if (total > monomial_budget)
      throw std::length_error("symbolic composition exceeded the monomial budget");
  }

  // Bind the boundary amplitudes.
  AlgebraElement out;
  for (const auto& [key, coeff] : f.poly) {
    const auto& [n, m] = key;
    out += (pow_int(z_bar_f, n) * pow_int(z_i, m)) * coeff;
  }
  out *= std::exp(f.cross * z_bar_f * z_i);
  return out;
}

AlgebraElement stationary_path(const SpinFieldModel& model, const TimeGrid& grid,
                               FieldMode mode) {
  if (grid.n_steps < 1) throw std::invalid_argument("time grid needs at least one step");
  const double eps = grid.eps();
  const Cplx phase(1.0, -model.omega * eps);

  // eta_j from the discrete stationarity condition; the action term left
  // over on the stationary sequence accumulates into phi.
  AlgebraElement eta = AlgebraElement::generator(gen::eta_in());
  AlgebraElement phi;
  for (int j = 1; j <= grid.n_steps; ++j) {
    AlgebraElement bj, bj_conj;
    if (mode == FieldMode::partners) {
      bj = make_generator(GeneratorKind::field_b, std::uint32_t(j));
      bj_conj = make_generator(GeneratorKind::field_b_conj, std::uint32_t(j));
    } else {
      const Cplx b = field_at(model, j * eps);
      bj = AlgebraElement::scalar(b);
      bj_conj = AlgebraElement::scalar(std::conj(b));
    }
    phi += (-kI * eps) * mul(bj_conj, eta);
    eta = phase * eta + (-kI * eps) * bj;
  }

  const AlgebraElement bar_f = AlgebraElement::generator(gen::eta_bar_out());
  return exp_element(mul(bar_f, eta) + phi);
}

AlgebraElement stationary_path(const JaynesCummingsModel& model, const TimeGrid& grid,
                               Cplx z_i, Cplx z_bar_f) {
  if (grid.n_steps < 1) throw std::invalid_argument("time grid needs at least one step");
  const double eps = grid.eps();
  const Cplx spin_phase(1.0, -model.omega_o * eps);
  const Cplx mode_phase(1.0, -model.omega * eps);

  AlgebraElement eta = AlgebraElement::generator(gen::eta_in());
  AlgebraElement z = AlgebraElement::scalar(z_i);
  for (int j = 1; j <= grid.n_steps; ++j) {
    const AlgebraElement lam_j =
        make_generator(GeneratorKind::coupling_lambda, std::uint32_t(j));
    AlgebraElement z_next = mode_phase * z + (-kI * eps) * mul(lam_j, eta);
    AlgebraElement eta_next = spin_phase * eta + (-kI * eps) * mul(lam_j, z);
    z = std::move(z_next);
    eta = std::move(eta_next);
  }

  const AlgebraElement bar_f = AlgebraElement::generator(gen::eta_bar_out());
  return exp_element(mul(bar_f, eta) + z_bar_f * z);
}

} // namespace gcpi
