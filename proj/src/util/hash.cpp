#include "synthbench/util/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <memory>

#include "synthbench/util/error.hpp"

namespace synthbench {
namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
      throw Error("sha256: digest init failed");
  }
  void update(const void* data, std::size_t len) {
    EVP_DigestUpdate(ctx_.get(), data, len);
  }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
      out.push_back(kDigits[md[i] >> 4]);
      out.push_back(kDigits[md[i] & 0xF]);
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string matrix_fingerprint(const Eigen::MatrixXd& m) {
  Sha256 h;
  const std::int64_t shape[2] = {m.rows(), m.cols()};
  h.update(shape, sizeof(shape));
  h.update(m.data(), sizeof(double) * static_cast<std::size_t>(m.size()));
  return h.hex();
}

}  // namespace synthbench
