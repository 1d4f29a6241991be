#include "gcpi/brackets.hpp"

#include <cmath>
#include <stdexcept>

namespace gcpi {

namespace {

constexpr Cplx kI(0.0, 1.0);

BracketPair operator*(Cplx c, const BracketPair& p) { return {c * p.u, c * p.v}; }
BracketPair operator+(const BracketPair& a, const BracketPair& b) {
  return {a.u + b.u, a.v + b.v};
}

void check_state(const BracketState& state) {
  if (state.m_max < 1) throw std::invalid_argument("bracket state needs m_max >= 1");
  if (state.phi_brackets.size() != std::size_t(state.m_max) + 1 ||
      state.eta_brackets.size() != std::size_t(state.m_max) + 1)
    throw std::invalid_argument("bracket state arrays inconsistent with m_max");
}

} // namespace

BracketState initial_bracket_state_spin(int m_max) {
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  BracketState s;
  s.tag = ModelTag::spin_field;
  s.m_max = m_max;
  s.phi_brackets.assign(m_max + 1, BracketPair{});
  s.eta_brackets.assign(m_max + 1, BracketPair{});
  s.phi_brackets[0] = {Cplx(1.0), Cplx(0.0)};
  s.eta_brackets[0] = {Cplx(0.0), Cplx(1.0)};
  return s;
}

BracketState initial_bracket_state_jc(int m_max, Cplx z_i) {
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  BracketState s;
  s.tag = ModelTag::jaynes_cummings;
  s.m_max = m_max;
  s.z_i = z_i;
  s.phi_brackets.assign(m_max + 1, BracketPair{});
  s.eta_brackets.assign(m_max + 1, BracketPair{});
  Cplx z_pow(1.0);
  for (int m = 0; m <= m_max; ++m) {
    s.phi_brackets[m] = {z_pow, Cplx(0.0)};
    s.eta_brackets[m] = {Cplx(0.0), z_pow};
    z_pow *= z_i;
  }
  return s;
}

BracketState step_discrete(const BracketState& state, const SpinFieldModel& model,
                           int j, double eps) {
  check_state(state);
  if (state.tag != ModelTag::spin_field)
    throw std::invalid_argument("step_discrete: state/model mismatch");
  const Cplx b = field_at(model, j * eps);
  const Cplx b_conj = std::conj(b);
  const Cplx phase(1.0, -model.omega * eps);

  BracketState next = state;
  next.t = state.t + eps;
  for (int m = 0; m <= state.m_max; ++m) {
    BracketPair phi = state.phi_brackets[m];
    if (m >= 1)
      phi = phi + (-kI * double(m) * b_conj * eps) * state.eta_brackets[m - 1];
    next.phi_brackets[m] = phi;
    next.eta_brackets[m] =
        phase * state.eta_brackets[m] + (-kI * b * eps) * state.phi_brackets[m];
  }
  return next;
}

BracketState step_discrete(const BracketState& state, const JaynesCummingsModel& model,
                           int j, double eps) {
  check_state(state);
  if (state.tag != ModelTag::jaynes_cummings)
    throw std::invalid_argument("step_discrete: state/model mismatch");
  const Cplx lam(model.lam);

  BracketState next = state;
  next.t = state.t + eps;
  for (int m = 0; m <= state.m_max; ++m) {
    const Cplx mode_phase(1.0, -double(m) * model.omega * eps);
    BracketPair z_m = mode_phase * state.phi_brackets[m];
    if (m >= 1)
      z_m = z_m + (-kI * double(m) * lam * eps) * state.eta_brackets[m - 1];
    next.phi_brackets[m] = z_m;

    // top of the chain: free evolution of the missing [z^(m_max+1)]
    BracketPair z_up;
    if (m + 1 <= state.m_max) {
      z_up = state.phi_brackets[m + 1];
    } else {
      const Cplx free_phase =
          pow_int(Cplx(1.0, -double(m + 1) * model.omega * eps), j - 1);
      z_up = {free_phase * pow_int(state.z_i, m + 1), Cplx(0.0)};
    }
    const Cplx spin_phase(1.0, -(double(m) * model.omega + model.omega_o) * eps);
    next.eta_brackets[m] = spin_phase * state.eta_brackets[m] + (-kI * lam * eps) * z_up;
  }
  return next;
}

namespace {

// Derivatives of the flattened bracket vector at time t.
void spin_rhs(const BracketState& s, const SpinFieldModel& model, double t,
              std::vector<BracketPair>& dphi, std::vector<BracketPair>& deta) {
  const Cplx b = field_at(model, t);
  const Cplx b_conj = std::conj(b);
  for (int m = 0; m <= s.m_max; ++m) {
    dphi[m] = (m >= 1) ? (-kI * double(m) * b_conj) * s.eta_brackets[m - 1]
                       : BracketPair{};
    deta[m] = (-kI * model.omega) * s.eta_brackets[m] + (-kI * b) * s.phi_brackets[m];
  }
}

void jc_rhs(const BracketState& s, const JaynesCummingsModel& model, double t,
            std::vector<BracketPair>& dphi, std::vector<BracketPair>& deta) {
  const Cplx lam(model.lam);
  for (int m = 0; m <= s.m_max; ++m) {
    BracketPair d = (-kI * double(m) * model.omega) * s.phi_brackets[m];
    if (m >= 1) d = d + (-kI * double(m) * lam) * s.eta_brackets[m - 1];
    dphi[m] = d;

    BracketPair z_up;
    if (m + 1 <= s.m_max) {
      z_up = s.phi_brackets[m + 1];
    } else {
      z_up = {pow_int(s.z_i, m + 1) * std::exp(-kI * double(m + 1) * model.omega * t),
              Cplx(0.0)};
    }
    deta[m] = (-kI * (double(m) * model.omega + model.omega_o)) * s.eta_brackets[m] +
              (-kI * lam) * z_up;
  }
}

template <typename Model, typename Rhs>
BracketState rk4_integrate(BracketState state, const Model& model, double t_final,
                           double dt, Rhs rhs) {
  check_state(state);
  if (dt <= 0.0) throw std::invalid_argument("integrate_ode: dt must be positive");
  if (t_final < state.t) throw std::invalid_argument("integrate_ode: t_final < state.t");
  const double span = t_final - state.t;
  if (span == 0.0) return state;
  const int n = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-12)));
  const double h = span / n;

  const int size = state.m_max + 1;
  std::vector<BracketPair> k1p(size), k1e(size), k2p(size), k2e(size), k3p(size),
      k3e(size), k4p(size), k4e(size);
  BracketState tmp = state;

  for (int step = 0; step < n; ++step) {
    const double t0 = state.t;
    rhs(state, model, t0, k1p, k1e);

    for (int m = 0; m < size; ++m) {
      tmp.phi_brackets[m] = state.phi_brackets[m] + (0.5 * h) * k1p[m];
      tmp.eta_brackets[m] = state.eta_brackets[m] + (0.5 * h) * k1e[m];
    }
    rhs(tmp, model, t0 + 0.5 * h, k2p, k2e);

    for (int m = 0; m < size; ++m) {
      tmp.phi_brackets[m] = state.phi_brackets[m] + (0.5 * h) * k2p[m];
      tmp.eta_brackets[m] = state.eta_brackets[m] + (0.5 * h) * k2e[m];
    }
    rhs(tmp, model, t0 + 0.5 * h, k3p, k3e);

    for (int m = 0; m < size; ++m) {
      tmp.phi_brackets[m] = state.phi_brackets[m] + h * k3p[m];
      tmp.eta_brackets[m] = state.eta_brackets[m] + h * k3e[m];
    }
    rhs(tmp, model, t0 + h, k4p, k4e);

    for (int m = 0; m < size; ++m) {
      state.phi_brackets[m] =
          state.phi_brackets[m] +
          (h / 6.0) * (k1p[m] + 2.0 * k2p[m] + 2.0 * k3p[m] + k4p[m]);
      state.eta_brackets[m] =
          state.eta_brackets[m] +
          (h / 6.0) * (k1e[m] + 2.0 * k2e[m] + 2.0 * k3e[m] + k4e[m]);
    }
    state.t = t0 + h;
  }
  state.t = t_final;
  return state;
}

} // namespace

BracketState integrate_ode(const BracketState& state, const SpinFieldModel& model,
                           double t_final, double dt) {
  if (state.tag != ModelTag::spin_field)
    throw std::invalid_argument("integrate_ode: state/model mismatch");
  return rk4_integrate(state, model, t_final, dt,
                       [](const BracketState& s, const SpinFieldModel& m, double t,
                          std::vector<BracketPair>& dp, std::vector<BracketPair>& de) {
                         spin_rhs(s, m, t, dp, de);
                       });
}

BracketState integrate_ode(const BracketState& state, const JaynesCummingsModel& model,
                           double t_final, double dt) {
  if (state.tag != ModelTag::jaynes_cummings)
    throw std::invalid_argument("integrate_ode: state/model mismatch");
  return rk4_integrate(state, model, t_final, dt,
                       [](const BracketState& s, const JaynesCummingsModel& m, double t,
                          std::vector<BracketPair>& dp, std::vector<BracketPair>& de) {
                         jc_rhs(s, m, t, dp, de);
                       });
}

namespace {

double inv_factorial(int m) {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f /= k;
  return f;
}

} // namespace

SpinKernel assemble_kernel_spin(const BracketState& state, AssemblyInfo* info) {
  check_state(state);
  SpinKernel out;
  Cplx u00(0.0), u01(0.0), u10(0.0), u11(0.0);
  double inv_fact = 1.0;
  for (int m = 0; m <= state.m_max; ++m) {
    if (m > 0) inv_fact /= m;
    u00 += inv_fact * state.phi_brackets[m].u;
    u01 += inv_fact * state.phi_brackets[m].v;
    u10 += inv_fact * state.eta_brackets[m].u;
    u11 += inv_fact * state.eta_brackets[m].v;
  }
  out.U << u00, u01, u10, u11;
  if (info) {
    info->tail = truncation_tail(state);
    info->truncated = info->tail > truncation_warn_threshold;
  }
  return out;
}

JcKernelTable assemble_kernel_jc(const BracketState& state, AssemblyInfo* info) {
  check_state(state);
  JcKernelTable table;
  table.A.resize(state.m_max + 1);
  table.B.resize(state.m_max + 1);
  table.C.resize(state.m_max + 1);
  table.D.resize(state.m_max + 1);
  double inv_fact = 1.0;
  for (int m = 0; m <= state.m_max; ++m) {
    if (m > 0) inv_fact /= m;
    table.A[m] = inv_fact * state.phi_brackets[m].u;
    table.B[m] = inv_fact * state.phi_brackets[m].v;
    table.C[m] = inv_fact * state.eta_brackets[m].u;
    table.D[m] = inv_fact * state.eta_brackets[m].v;
  }
  if (info) {
    info->tail = truncation_tail(state);
    info->truncated = info->tail > truncation_warn_threshold;
  }
  return table;
}

double truncation_tail(const BracketState& state) {
  check_state(state);
  const double inv_fact = inv_factorial(state.m_max);
  const BracketPair& p = state.phi_brackets[state.m_max];
  const BracketPair& e = state.eta_brackets[state.m_max];
  double tail = std::abs(p.u);
  tail = std::max(tail, std::abs(p.v));
  tail = std::max(tail, std::abs(e.u));
  tail = std::max(tail, std::abs(e.v));
  return tail * inv_fact;
}

} // namespace gcpi
