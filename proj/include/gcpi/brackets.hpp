#pragma once
// Expansion-coefficient engine: discrete finite-difference recursions and
// continuum ODE chains for the bracket families, plus assembly of the
// physical kernels from the truncated families.
//
// With numeric fields the only surviving odd generator is the inbound
// boundary variable, so every bracket is a pair (u, v): the parts
// proportional to 1 and to eta_i. The chains are
//   spin:  [phi^m]'     = -i m B*(t) [phi^(m-1) eta]
//          [phi^m eta]' = -i w [phi^m eta] - i B(t) [phi^m]
//   mode:  [z^m]'       = -i m w [z^m] - i m lam [z^(m-1) eta]
//          [z^m eta]'   = -i (m w + w_o) [z^m eta] - i lam [z^(m+1)]
// The top of the mode chain is closed with the free (lam = 0) evolution of
// the missing bracket; the closure error is reported by truncation_tail.

#include <vector>

#include "gcpi/kernels.hpp"
#include "gcpi/models.hpp"

namespace gcpi {

struct BracketPair {
  Cplx u{}; // part proportional to the scalar monomial 1
  Cplx v{}; // part proportional to eta_i
};

struct BracketState {
  ModelTag tag = ModelTag::spin_field;
  int m_max = 1;
  double t = 0.0;
  Cplx z_i{}; // initial bosonic amplitude (spin-boson only)
  std::vector<BracketPair> phi_brackets; // [phi^m] or [z^m], m = 0..m_max
  std::vector<BracketPair> eta_brackets; // [phi^m eta] or [z^m eta]
};

inline constexpr int default_m_max_spin = 16;
inline constexpr int default_m_max_jc = 12;

BracketState initial_bracket_state_spin(int m_max);
BracketState initial_bracket_state_jc(int m_max, Cplx z_i);

// One forward-difference step j-1 -> j at slice width eps.
BracketState step_discrete(const BracketState& state, const SpinFieldModel& model,
                           int j, double eps);
BracketState step_discrete(const BracketState& state, const JaynesCummingsModel& model,
                           int j, double eps);

// Fixed-step classical 4th-order integration of the continuum chain from
// state.t to t_final; the step is shrunk to divide the interval evenly.
BracketState integrate_ode(const BracketState& state, const SpinFieldModel& model,
                           double t_final, double dt);
BracketState integrate_ode(const BracketState& state, const JaynesCummingsModel& model,
                           double t_final, double dt);

struct AssemblyInfo {
  double tail = 0.0;
  bool truncated = false; // tail above the warning threshold
};

inline constexpr double truncation_warn_threshold = 1e-9;

// U00 = sum u([phi^m])/m!, U01 = sum v([phi^m])/m!, U10 = sum u([phi^m
// eta])/m!, U11 = sum v([phi^m eta])/m!.
SpinKernel assemble_kernel_spin(const BracketState& state, AssemblyInfo* info = nullptr);

// A_m = u([z^m])/m!, B_m = v([z^m])/m!, C_m = u([z^m eta])/m!,
// D_m = v([z^m eta])/m!.
JcKernelTable assemble_kernel_jc(const BracketState& state, AssemblyInfo* info = nullptr);

// Magnitude of the last included m-term across the four assembly arrays; an
// m_max-sufficiency estimate.
double truncation_tail(const BracketState& state);

} // namespace gcpi
