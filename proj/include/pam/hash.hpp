#pragma once

// FNV-1a 64-bit hashing over heterogeneous inputs. Used to derive stable
// stream ids for QMC integrands from their parameters and to fingerprint
// canonical config dumps in run manifests.

#include <cstdint>
#include <cstring>
#include <string>

namespace pam {

struct Fnv1a {
  std::uint64_t state = 1469598103934665603ull;

  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      state ^= b[i];
      state *= 1099511628211ull;
    }
  }

  Fnv1a& add(std::uint64_t v) {
    bytes(&v, sizeof v);
    return *this;
  }

  Fnv1a& add(std::int64_t v) {
    bytes(&v, sizeof v);
    return *this;
  }

  Fnv1a& add(int v) { return add(static_cast<std::int64_t>(v)); }

  // Hashes the bit pattern, so distinct doubles get distinct hashes.
  Fnv1a& add(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    return add(bits);
  }

  Fnv1a& add(const std::string& s) {
    bytes(s.data(), s.size());
    state *= 1099511628211ull; // length-free separator
    return *this;
  }

  Fnv1a& add(const char* s) { return add(std::string(s)); }
};

inline std::uint64_t fnv1a64(const std::string& s) {
  Fnv1a h;
  h.bytes(s.data(), s.size());
  return h.state;
}

} // namespace pam
