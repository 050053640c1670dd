#include <cstdlib>
#include <string>

#include "freespec/kernels/kernels.hpp"

namespace freespec::kernels {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

namespace {

constexpr KernelTable kScalar{Backend::Scalar, &scalar::axpy, &scalar::rot, &scalar::dotc,
                              &scalar::scale};
constexpr KernelTable kAvx2{Backend::Avx2, &avx2::axpy, &avx2::rot, &avx2::dotc,
                            &avx2::scale};

Backend detect() {
  if (const char* env = std::getenv("FREESPEC_SIMD")) {
    const std::string v(env);
    if (v == "off" || v == "scalar" || v == "0") return Backend::Scalar;
  }
  return avx2::available() ? Backend::Avx2 : Backend::Scalar;
}

}  // namespace

const KernelTable& table_for(Backend b) {
  if (b == Backend::Avx2 && avx2::available()) return kAvx2;
  return kScalar;
}

const KernelTable& active() {
  static const KernelTable& table = table_for(detect());
  return table;
}

}  // namespace freespec::kernels
