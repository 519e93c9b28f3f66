#include "pam/sobol.hpp"

#include <bit>
#include <stdexcept>

namespace pam {

namespace {

// Primitive polynomials over GF(2) and initial direction numbers for
// dimensions 2..16 (dimension 1 is the van der Corput sequence). The
// polynomial integer encodes x^s + a_1 x^{s-1} + ... + a_{s-1} x + 1 from
// most to least significant bit.
struct DimInit {
  unsigned poly;
  unsigned deg;
  unsigned m[6];
};

constexpr DimInit kInit[Sobol::kMaxDim - 1] = {
    {3, 1, {1, 0, 0, 0, 0, 0}},
    {7, 2, {1, 3, 0, 0, 0, 0}},
    {11, 3, {1, 3, 1, 0, 0, 0}},
    {13, 3, {1, 1, 1, 0, 0, 0}},
    {19, 4, {1, 1, 3, 3, 0, 0}},
    {25, 4, {1, 3, 5, 13, 0, 0}},
    {37, 5, {1, 1, 5, 5, 17, 0}},
    {41, 5, {1, 1, 5, 5, 5, 0}},
    {47, 5, {1, 1, 7, 11, 19, 0}},
    {55, 5, {1, 1, 5, 1, 1, 0}},
    {59, 5, {1, 1, 1, 3, 11, 0}},
    {61, 5, {1, 3, 5, 5, 31, 0}},
    {67, 6, {1, 3, 3, 9, 7, 49}},
    {91, 6, {1, 1, 1, 15, 21, 21}},
    {97, 6, {1, 3, 1, 13, 27, 49}},
};

} // namespace

Sobol::Sobol(unsigned dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim)
    throw std::domain_error("Sobol: dimension must lie in [1, 16]");
  for (unsigned k = 0; k < 64; ++k) v_[0][k] = 1ull << (63 - k);
  for (unsigned j = 1; j < dim; ++j) {
    const DimInit& di = kInit[j - 1];
    const unsigned s = di.deg;
    for (unsigned k = 0; k < s; ++k)
      v_[j][k] = static_cast<std::uint64_t>(di.m[k]) << (63 - k);
    for (unsigned k = s; k < 64; ++k) {
      std::uint64_t v = v_[j][k - s] ^ (v_[j][k - s] >> s);
      for (unsigned i = 1; i < s; ++i)
        if ((di.poly >> (s - i)) & 1u) v ^= v_[j][k - i];
      v_[j][k] = v;
    }
  }
}

void Sobol::next_bits(std::uint64_t* out) {
  for (unsigned j = 0; j < dim_; ++j) out[j] = x_[j];
  ++count_;
  const unsigned c = static_cast<unsigned>(std::countr_zero(count_));
  for (unsigned j = 0; j < dim_; ++j) x_[j] ^= v_[j][c];
}

} // namespace pam
