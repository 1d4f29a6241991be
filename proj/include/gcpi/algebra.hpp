#pragma once
// Exact arithmetic in the exterior algebra generated by time-indexed
// anticommuting symbols, with nilpotent-truncated exponentials and Berezin
// integration against the coherent-state measure.
//
// An element is a finite complex-linear combination of canonical monomials.
// A canonical monomial is a strictly increasing sequence of generators under
// the fixed order (time_index, kind rank). Reordering a product into
// canonical form contributes the sign of the permutation; a repeated
// generator annihilates the term before it is ever stored.

#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace gcpi {

using Cplx = std::complex<double>;

// Non-negative integer power by repeated multiplication; pow_int(0, 0) = 1.
inline Cplx pow_int(Cplx base, int exponent) {
  Cplx acc(1.0);
  for (int k = 0; k < exponent; ++k) acc *= base;
  return acc;
}

enum class GeneratorKind : std::uint8_t {
  eta_in = 0,          // initial boundary variable
  eta_bar_out = 1,     // final boundary variable
  eta_step = 2,        // ket-side variable at an intermediate slice
  eta_bar_step = 3,    // bra-side variable at an intermediate slice
  field_b = 4,         // anticommuting partner of the classical field
  field_b_conj = 5,    // partner of the conjugate field
  coupling_lambda = 6, // partner of the spin-boson coupling
};

// Every generator is Grassmann-odd. The total order on (time, kind) is
// fixed for the lifetime of a computation.
struct GeneratorId {
  std::uint32_t time = 0;
  GeneratorKind kind = GeneratorKind::eta_in;

  std::uint64_t key() const {
    return (std::uint64_t(time) << 3) | std::uint64_t(kind);
  }
  friend bool operator==(GeneratorId a, GeneratorId b) {
    return a.key() == b.key();
  }
  friend std::strong_ordering operator<=>(GeneratorId a, GeneratorId b) {
    return a.key() <=> b.key();
  }

  bool is_partner() const {
    return kind == GeneratorKind::field_b ||
           kind == GeneratorKind::field_b_conj ||
           kind == GeneratorKind::coupling_lambda;
  }
  bool is_step() const {
    return kind == GeneratorKind::eta_step ||
           kind == GeneratorKind::eta_bar_step;
  }
};

namespace gen {
inline GeneratorId eta_in() { return {0, GeneratorKind::eta_in}; }
inline GeneratorId eta_bar_out() { return {0, GeneratorKind::eta_bar_out}; }
inline GeneratorId eta(std::uint32_t j) { return {j, GeneratorKind::eta_step}; }
inline GeneratorId eta_bar(std::uint32_t j) { return {j, GeneratorKind::eta_bar_step}; }
inline GeneratorId field_b(std::uint32_t j) { return {j, GeneratorKind::field_b}; }
inline GeneratorId field_b_conj(std::uint32_t j) { return {j, GeneratorKind::field_b_conj}; }
inline GeneratorId lambda(std::uint32_t j) { return {j, GeneratorKind::coupling_lambda}; }
} // namespace gen

// Strictly ascending generator sequence; empty = the scalar monomial 1.
using Monomial = std::vector<GeneratorId>;

enum class Parity { even, odd, mixed };

class AlgebraElement {
 public:
  using TermMap = std::map<Monomial, Cplx>;

  // Coefficients with magnitude below this are dropped after each
  // arithmetic pass; far below every test tolerance in this project.
  static constexpr double drop_threshold = 1e-15;

  AlgebraElement() = default; // zero element

  static AlgebraElement scalar(Cplx c);
  static AlgebraElement generator(GeneratorId g);

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Cplx scalar_part() const;

  Parity parity() const;

  // Inserts c on an already-canonical monomial (no reordering performed).
  void add_term(const Monomial& m, Cplx c);

  void prune();

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(Cplx c);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    a += b;
    return a;
  }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    a -= b;
    return a;
  }
  friend AlgebraElement operator-(AlgebraElement a) {
    a *= Cplx(-1.0);
    return a;
  }
  friend AlgebraElement operator*(AlgebraElement a, Cplx c) {
    a *= c;
    return a;
  }
  friend AlgebraElement operator*(Cplx c, AlgebraElement a) {
    a *= c;
    return a;
  }
  friend AlgebraElement operator+(AlgebraElement a, Cplx c) {
    a += scalar(c);
    return a;
  }
  friend AlgebraElement operator+(Cplx c, AlgebraElement a) {
    a += scalar(c);
    return a;
  }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

 private:
  TermMap terms_;
};

AlgebraElement make_generator(GeneratorKind kind, std::uint32_t j);

// Bilinear graded product: monomials concatenate, re-sort with the sign of
// the permutation, and any repeated generator kills the term.
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);

// exp(a) = e^s * sum_k n^k/k! with s the scalar part and n = a - s; the sum
// terminates by nilpotency after at most (distinct generators in n) factors.
AlgebraElement exp_element(const AlgebraElement& a);

// Integrates out the slice-j pair (eta_j, eta_bar_j) with the measure
// d(eta) d(eta_bar) exp(-eta_bar eta). Normalisation and sign are fixed so
// that the measure integrates 1 to 1 and composing two overlap kernels
// reproduces the single overlap kernel. Throws std::logic_error if the
// result still mentions the integrated pair.
AlgebraElement berezin_integrate_pair(const AlgebraElement& a, std::uint32_t j);

// Stored coefficient of a canonical monomial, or 0.
Cplx coefficient_of(const AlgebraElement& a, const Monomial& m);

// Coefficient of the product g1*g2*... in the given order; the reordering
// sign is applied, a repeated generator gives 0.
Cplx coefficient_of_product(const AlgebraElement& a, const std::vector<GeneratorId>& gens);

double norm_inf(const AlgebraElement& a);
double max_coeff_dev(const AlgebraElement& a, const AlgebraElement& b);

bool contains_generator(const AlgebraElement& a, GeneratorId g);
bool contains_kind(const AlgebraElement& a, GeneratorKind kind);

// Coefficients of a boundary kernel K = k00 + eta_bar_f k10 + k01 eta_in
// + eta_bar_f eta_in k11. Sector (row, col) indexing matches the 2x2
// propagator convention: 0 = down, 1 = up.
struct KernelCoeffs {
  Cplx k00{}, k01{}, k10{}, k11{};
};

using PartnerValuation = std::function<Cplx(GeneratorId)>;

// Substitutes numeric values for the partner generators and reads off the
// four boundary sectors. Each monomial is first reordered (with sign) into
// the reference order (eta_bar_f, partners by descending time with field_b
// before field_b_conj inside a slice, eta_in); the substitution itself then
// carries no extra sign. The element must not contain intermediate slice
// variables.
KernelCoeffs de_grassmannize(const AlgebraElement& a, const PartnerValuation& value_of);

} // namespace gcpi
