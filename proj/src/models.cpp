#include "gcpi/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gcpi {

namespace {
constexpr Cplx kI(0.0, 1.0);
}

Cplx field_from_cartesian(double bx, double by) {
  return Cplx(bx, -by) * 0.5;
}

Cplx field_at(const SpinFieldModel& model, double t) {
  if (const auto* c = std::get_if<ConstantField>(&model.field)) return c->value;
  if (const auto* s = std::get_if<SinusoidField>(&model.field))
    return s->amplitude * std::exp(kI * (s->angular_freq * t + s->phase));

  const auto& samples = std::get<SampledField>(model.field).samples;
  if (samples.empty()) throw std::domain_error("field_at: empty sampled waveform");
  if (t < samples.front().first || t > samples.back().first)
    throw std::domain_error("field_at: t outside sampled waveform support");
  auto hi = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double x, const auto& s) { return x < s.first; });
  if (hi == samples.begin()) return samples.front().second;
  if (hi == samples.end()) return samples.back().second;
  auto lo = hi - 1;
  const double w = (t - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

GeneratorId slice_bra_generator(int j, const TimeGrid& grid) {
  return j == grid.n_steps ? gen::eta_bar_out() : gen::eta_bar(std::uint32_t(j));
}

GeneratorId slice_ket_generator(int j, const TimeGrid& grid) {
  (void)grid;
  return j == 1 ? gen::eta_in() : gen::eta(std::uint32_t(j - 1));
}

AlgebraElement one_step_kernel_spin(const SpinFieldModel& model, int j,
                                    const TimeGrid& grid, bool symbolic_field) {
  if (j < 1 || j > grid.n_steps)
    throw std::out_of_range("one_step_kernel_spin: step index out of range");
  const double eps = grid.eps();
  const AlgebraElement bra = AlgebraElement::generator(slice_bra_generator(j, grid));
  const AlgebraElement ket = AlgebraElement::generator(slice_ket_generator(j, grid));

  AlgebraElement exponent = Cplx(1.0, -model.omega * eps) * mul(bra, ket);
  if (symbolic_field) {
    const AlgebraElement bj = make_generator(GeneratorKind::field_b, std::uint32_t(j));
    const AlgebraElement bj_conj = make_generator(GeneratorKind::field_b_conj, std::uint32_t(j));
    exponent += (-kI * eps) * mul(bra, bj);
    exponent += (-kI * eps) * mul(bj_conj, ket);
  } else {
    const Cplx b = field_at(model, j * eps);
    exponent += (-kI * b * eps) * bra;
    exponent += (-kI * std::conj(b) * eps) * ket;
  }
  return exp_element(exponent);
}

AlgebraElement one_step_kernel_jc(const JaynesCummingsModel& model, int j,
                                  const TimeGrid& grid, Cplx z_prev,
                                  Cplx z_bar_next) {
  if (j < 1 || j > grid.n_steps)
    throw std::out_of_range("one_step_kernel_jc: step index out of range");
  const double eps = grid.eps();
  const AlgebraElement bra = AlgebraElement::generator(slice_bra_generator(j, grid));
  const AlgebraElement ket = AlgebraElement::generator(slice_ket_generator(j, grid));
  const AlgebraElement lam_j = make_generator(GeneratorKind::coupling_lambda, std::uint32_t(j));

  AlgebraElement exponent =
      AlgebraElement::scalar(Cplx(1.0, -model.omega * eps) * z_bar_next * z_prev);
  exponent += Cplx(1.0, -model.omega_o * eps) * mul(bra, ket);
  exponent += (-kI * eps * z_prev) * mul(bra, lam_j);
  exponent += (-kI * eps * z_bar_next) * mul(lam_j, ket);
  return exp_element(exponent);
}

PartnerValuation spin_partner_valuation(const SpinFieldModel& model, const TimeGrid& grid) {
  const double eps = grid.eps();
  return [model, eps](GeneratorId g) -> Cplx {
    const Cplx b = field_at(model, g.time * eps);
    if (g.kind == GeneratorKind::field_b) return b;
    if (g.kind == GeneratorKind::field_b_conj) return std::conj(b);
    throw std::invalid_argument("spin_partner_valuation: unexpected generator kind");
  };
}

PartnerValuation jc_partner_valuation(const JaynesCummingsModel& model) {
  return [lam = model.lam](GeneratorId g) -> Cplx {
    if (g.kind == GeneratorKind::coupling_lambda) return Cplx(lam);
    throw std::invalid_argument("jc_partner_valuation: unexpected generator kind");
  };
}

} // namespace gcpi
