#pragma once
// Recursive reduction of the N-step propagator to a single exponential with
// anticommuting partners, direct slice-by-slice Berezin composition for
// cross-checking, and the stationary-path evaluation.

#include "gcpi/algebra.hpp"
#include "gcpi/models.hpp"

namespace gcpi {

// Test-only switch: commuting maps the field partners to plain complex
// factors before any product is taken, which breaks the single-exponential
// rewriting of composed kernels.
enum class FieldMode { partners, commuting };

// Symbolic composition is capped; beyond this the bracket engine applies.
inline constexpr int n_max_symbolic = 8;
inline constexpr std::size_t monomial_budget = std::size_t(1) << 18;

// Recursion variables carried step to step: eta_j and (phi_j for the spin
// model, z_j for the spin-boson model), all inside the algebra.
struct ExponentState {
  ModelTag tag = ModelTag::spin_field;
  AlgebraElement eta;
  AlgebraElement phi_or_z;
  int step = 0;
};

ExponentState recurse_exponent(const SpinFieldModel& model, const TimeGrid& grid,
                               FieldMode mode = FieldMode::partners);
ExponentState recurse_exponent(const JaynesCummingsModel& model, const TimeGrid& grid,
                               Cplx z_i);

// Fully expanded K = exp(etabar_f eta_N + phi_N), or for the spin-boson
// model exp(etabar_f eta_N + zbar_f z_N) with numeric zbar_f.
AlgebraElement assemble_propagator(const ExponentState& state, Cplx z_bar_f = Cplx(0.0));

// Multiplies one-step kernels and eliminates every intermediate pair by
// Berezin integration; bosonic intermediates are eliminated by the exact
// overlap-composition rule for kernels of the form
// exp(a zbar' + b z + c zbar' z + d). Throws on N > n_max_symbolic or when
// the monomial count exceeds the budget.
AlgebraElement compose_discrete(const SpinFieldModel& model, const TimeGrid& grid,
                                FieldMode mode = FieldMode::partners);
AlgebraElement compose_discrete(const JaynesCummingsModel& model, const TimeGrid& grid,
                                Cplx z_i, Cplx z_bar_f);

// Evaluates the discrete action on the stationary path (the mixed
// c-number/Grassmann sequence extremising it) and assembles the kernel.
AlgebraElement stationary_path(const SpinFieldModel& model, const TimeGrid& grid,
                               FieldMode mode = FieldMode::partners);
AlgebraElement stationary_path(const JaynesCummingsModel& model, const TimeGrid& grid,
                               Cplx z_i, Cplx z_bar_f);

} // namespace gcpi
