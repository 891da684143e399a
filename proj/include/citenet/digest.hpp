#pragma once

#include <string>
#include <string_view>

namespace citenet {

/// SHA-256 of `data`, lower-case hex.
std::string sha256_hex(std::string_view data);

/// Incremental SHA-256 for streamed input.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::string_view data);
  std::string hex_digest();  // finalizes; call once

 private:
  void* ctx_;
};

}  // namespace citenet
