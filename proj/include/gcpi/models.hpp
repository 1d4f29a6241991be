#pragma once
// Model definitions and the one-infinitesimal-step coherent-state kernels.
//
// Conventions: hbar = 1, all frequencies in radians per unit time. The
// constant -w/2 term of the spin Hamiltonian is dropped; the matrix oracle
// uses the identical convention so phases are comparable.

#include <complex>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "gcpi/algebra.hpp"

namespace gcpi {

struct ConstantField {
  Cplx value{};
};

// B(t) = amplitude * exp(i (angular_freq t + phase)); a rotating field with
// constant magnitude. angular_freq = 0 reduces to a constant.
struct SinusoidField {
  double amplitude = 0.0;
  double angular_freq = 0.0;
  double phase = 0.0;
};

// Piecewise-linear complex samples, strictly increasing in t. Evaluation
// outside [t_first, t_last] is a domain error.
struct SampledField {
  std::vector<std::pair<double, Cplx>> samples;
};

using FieldWaveform = std::variant<ConstantField, SinusoidField, SampledField>;

enum class ModelTag { spin_field, jaynes_cummings };

// The complex field is B = (B_x - i B_y) / 2 when built from Cartesian
// components of a classical magnetic field.
Cplx field_from_cartesian(double bx, double by);

struct SpinFieldModel {
  double omega = 0.0; // level splitting
  FieldWaveform field = ConstantField{};
};

struct JaynesCummingsModel {
  double omega_o = 0.0; // spin splitting
  double omega = 0.0;   // mode frequency
  double lam = 0.0;     // real coupling
};

struct TimeGrid {
  double t_total = 0.0;
  int n_steps = 1;
  double eps() const { return t_total / n_steps; }
};

// Waveform value at time t; sampled waveforms interpolate linearly and
// throw std::domain_error outside their support.
Cplx field_at(const SpinFieldModel& model, double t);

// One-step kernel exp[(1-iwe) etabar_j eta_{j-1} - etabar_j (i B_j e)
// - (i B_j^* e) eta_{j-1}], expanded. The slice field is sampled at the
// right endpoint, B_j = B(j e). With symbolic_field set, B_j and B_j^* are
// unit-coefficient partner generators; otherwise the numeric value
// multiplies the eta directly. Boundary slots: eta_{0} is the inbound
// boundary generator and etabar_{n_steps} the outbound one.
AlgebraElement one_step_kernel_spin(const SpinFieldModel& model, int j,
                                    const TimeGrid& grid, bool symbolic_field);

// One-step kernel for the spin-boson pair with the bosonic amplitudes
// z_{j-1}, zbar_j supplied numerically and the coupling carried by the odd
// partner generator lambda_j.
AlgebraElement one_step_kernel_jc(const JaynesCummingsModel& model, int j,
                                  const TimeGrid& grid, Cplx z_prev,
                                  Cplx z_bar_next);

// Generator ids used by a slice kernel after boundary substitution.
GeneratorId slice_bra_generator(int j, const TimeGrid& grid);
GeneratorId slice_ket_generator(int j, const TimeGrid& grid);

// Numeric values of the partner generators for a given model; used when a
// symbolic kernel is reduced to a plain 2x2 kernel.
PartnerValuation spin_partner_valuation(const SpinFieldModel& model, const TimeGrid& grid);
PartnerValuation jc_partner_valuation(const JaynesCummingsModel& model);

} // namespace gcpi
