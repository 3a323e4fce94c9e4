// SPDX-License-Identifier: Apache-2.0
#include "tclaw/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace tclaw::kernels {

#ifndef TCLAW_HAVE_AVX2
const Ops* avx2() { return nullptr; }
#endif

namespace {

const Ops& select() {
  const char* req = std::getenv("TCLAW_SIMD");
  if (req && std::strcmp(req, "scalar") == 0) return scalar();
  if (req && std::strcmp(req, "avx2") == 0) {
    const Ops* v = avx2();
    if (!v) throw std::runtime_error("TCLAW_SIMD=avx2 requested but AVX2 is unavailable");
    return *v;
  }
  if (req && std::strcmp(req, "auto") != 0 && std::strlen(req) > 0)
    throw std::runtime_error(std::string("unknown TCLAW_SIMD value: ") + req);
  const Ops* v = avx2();
  return v ? *v : scalar();
}

}  // namespace

const Ops& active() {
  static const Ops& ops = select();
  return ops;
}

}  // namespace tclaw::kernels
