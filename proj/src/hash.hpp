#ifndef QRC_SRC_HASH_HPP
#define QRC_SRC_HASH_HPP

#include <cstdint>
#include <cstring>
#include <string>

namespace qrc {

// FNV-1a 64-bit, byte-order independent for the types fed here; used
// for content hashes recorded in run outputs (std::hash is not stable
// across implementations).
class Fnv1a {
public:
  Fnv1a &add_bytes(const void *data, size_t n) {
    auto p = static_cast<const unsigned char *>(data);
    for (size_t i = 0; i < n; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }

  Fnv1a &add(double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    return add(bits);
  }
  Fnv1a &add(uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (v >> (8 * i)) & 0xffU;
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  Fnv1a &add(int v) { return add(uint64_t(int64_t(v))); }
  Fnv1a &add(const std::string &s) { return add_bytes(s.data(), s.size()); }

  uint64_t value() const { return state_; }

private:
  uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(uint64_t value);

} // namespace qrc

#endif
