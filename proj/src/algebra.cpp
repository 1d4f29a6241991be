#include "gcpi/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace gcpi {

AlgebraElement AlgebraElement::scalar(Cplx c) {
  AlgebraElement e;
  if (std::abs(c) >= drop_threshold) e.terms_.emplace(Monomial{}, c);
  return e;
}

AlgebraElement AlgebraElement::generator(GeneratorId g) {
  AlgebraElement e;
  e.terms_.emplace(Monomial{g}, Cplx(1.0));
  return e;
}

Cplx AlgebraElement::scalar_part() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Cplx(0.0) : it->second;
}

Parity AlgebraElement::parity() const {
  bool has_even = false, has_odd = false;
  for (const auto& [m, c] : terms_) {
    (m.size() % 2 == 0 ? has_even : has_odd) = true;
  }
  if (has_odd && has_even) return Parity::mixed;
  if (has_odd) return Parity::odd;
  return Parity::even;
}

void AlgebraElement::add_term(const Monomial& m, Cplx c) {
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (std::abs(it->second) < drop_threshold) terms_.erase(it);
  } else if (std::abs(c) < drop_threshold) {
    terms_.erase(it);
  }
}

void AlgebraElement::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < drop_threshold)
      it = terms_.erase(it);
    else
      ++it;
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Cplx c) {
  if (std::abs(c) < drop_threshold) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  prune();
  return *this;
}

AlgebraElement make_generator(GeneratorKind kind, std::uint32_t j) {
  return AlgebraElement::generator(GeneratorId{j, kind});
}

namespace {

// Merge two canonical monomials counting the transpositions needed to sort
// the concatenation. Returns false if a generator repeats.
bool merge_monomials(const Monomial& a, const Monomial& b, Monomial& out, int& sign) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  int inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] hops over the remaining a-generators
      inversions += static_cast<int>(a.size() - i);
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  sign = (inversions % 2 == 0) ? 1 : -1;
  return true;
}

} // namespace

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement result;
  Monomial merged;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int sign = 1;
      if (!merge_monomials(ma, mb, merged, sign)) continue;
      result.add_term(merged, ca * cb * double(sign));
    }
  }
  return result;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  return mul(a, b);
}

namespace {

std::size_t distinct_generator_count(const AlgebraElement& a) {
  std::vector<GeneratorId> seen;
  for (const auto& [m, c] : a.terms())
    for (GeneratorId g : m)
      if (std::find(seen.begin(), seen.end(), g) == seen.end()) seen.push_back(g);
  return seen.size();
}

} // namespace

AlgebraElement exp_element(const AlgebraElement& a) {
  const Cplx s = a.scalar_part();
  AlgebraElement n = a - AlgebraElement::scalar(s);
  const std::size_t k_max = distinct_generator_count(n);

  AlgebraElement acc = AlgebraElement::scalar(1.0);
  AlgebraElement power = AlgebraElement::scalar(1.0);
  for (std::size_t k = 1; k <= k_max; ++k) {
    power = mul(power, n);
    power *= Cplx(1.0 / double(k));
    if (power.is_zero()) break;
    acc += power;
  }
  acc *= std::exp(s);
  return acc;
}

AlgebraElement berezin_integrate_pair(const AlgebraElement& a, std::uint32_t j) {
  const GeneratorId g_eta = gen::eta(j);
  const GeneratorId g_bar = gen::eta_bar(j);

  // Weight of the measure: exp(-eta_bar eta) = 1 + eta eta_bar.
  AlgebraElement weight = AlgebraElement::scalar(1.0) +
      mul(AlgebraElement::generator(g_eta), AlgebraElement::generator(g_bar));
  AlgebraElement weighted = mul(a, weight);

  // Raw pair integral: keep only monomials containing both variables,
  // factor the pair to the front with its permutation sign, drop the rest.
  AlgebraElement result;
  Monomial reduced;
  for (const auto& [m, c] : weighted.terms()) {
    auto it_eta = std::find(m.begin(), m.end(), g_eta);
    auto it_bar = std::find(m.begin(), m.end(), g_bar);
    if (it_eta == m.end() || it_bar == m.end()) continue;
    const int i1 = static_cast<int>(it_eta - m.begin());
    const int i2 = static_cast<int>(it_bar - m.begin());
    const int sign = ((i1 + i2 - 1) % 2 == 0) ? 1 : -1;
    reduced.clear();
    for (GeneratorId g : m)
      if (g != g_eta && g != g_bar) reduced.push_back(g);
    result.add_term(reduced, c * double(sign));
  }

  if (contains_generator(result, g_eta) || contains_generator(result, g_bar))
    throw std::logic_error("berezin_integrate_pair: integrated generators survived");
  return result;
}

Cplx coefficient_of(const AlgebraElement& a, const Monomial& m) {
  auto it = a.terms().find(m);
  return it == a.terms().end() ? Cplx(0.0) : it->second;
}

Cplx coefficient_of_product(const AlgebraElement& a, const std::vector<GeneratorId>& gens) {
  // Insertion sort counting transpositions; a repeated generator gives 0.
  Monomial sorted(gens.begin(), gens.end());
  int inversions = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    GeneratorId g = sorted[i];
    std::size_t k = i;
    while (k > 0 && g < sorted[k - 1]) {
      sorted[k] = sorted[k - 1];
      --k;
      ++inversions;
    }
    sorted[k] = g;
  }
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) return Cplx(0.0);
  const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
  return sign * coefficient_of(a, sorted);
}

double norm_inf(const AlgebraElement& a) {
  double m = 0.0;
  for (const auto& [mono, c] : a.terms()) m = std::max(m, std::abs(c));
  return m;
}

double max_coeff_dev(const AlgebraElement& a, const AlgebraElement& b) {
  return norm_inf(a - b);
}

bool contains_generator(const AlgebraElement& a, GeneratorId g) {
  for (const auto& [m, c] : a.terms())
    if (std::find(m.begin(), m.end(), g) != m.end()) return true;
  return false;
}

bool contains_kind(const AlgebraElement& a, GeneratorKind kind) {
  for (const auto& [m, c] : a.terms())
    for (GeneratorId g : m)
      if (g.kind == kind) return true;
  return false;
}

namespace {

// Rank of a generator in the reference order used by de_grassmannize:
// eta_bar_out first, then partners by descending time (field_b ahead of
// field_b_conj within one slice), eta_in last.
std::uint64_t reference_rank(GeneratorId g) {
  switch (g.kind) {
    case GeneratorKind::eta_bar_out:
      return 0;
    case GeneratorKind::eta_in:
      return ~std::uint64_t{0};
    default: {
      const std::uint64_t time_desc = 0xFFFFFFFFull - g.time;
      return 1 + ((time_desc << 3) | std::uint64_t(g.kind));
    }
  }
}

int permutation_sign_to_reference(const Monomial& m) {
  int inversions = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t k = i + 1; k < m.size(); ++k)
      if (reference_rank(m[i]) > reference_rank(m[k])) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

} // namespace

KernelCoeffs de_grassmannize(const AlgebraElement& a, const PartnerValuation& value_of) {
  KernelCoeffs out;
  for (const auto& [m, c] : a.terms()) {
    bool has_in = false, has_out = false;
    Cplx factor(1.0);
    for (GeneratorId g : m) {
      if (g.kind == GeneratorKind::eta_in) {
        has_in = true;
      } else if (g.kind == GeneratorKind::eta_bar_out) {
        has_out = true;
      } else if (g.is_partner()) {
        factor *= value_of(g);
      } else {
        throw std::invalid_argument(
            "de_grassmannize: element still contains intermediate slice variables");
      }
    }
    const Cplx v = c * factor * double(permutation_sign_to_reference(m));
    if (has_in && has_out)
      out.k11 += v;
    else if (has_out)
      out.k10 += v;
    else if (has_in)
      out.k01 += v;
    else
      out.k00 += v;
  }
  return out;
}

} // namespace gcpi
