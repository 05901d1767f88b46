#pragma once

#include <vector>

#include "evanskit/numkernel.hpp"

namespace evanskit {

/// Values indexed by Fourier mode k in {-K, ..., K}. Only |k| is stored, so
/// values(k) == values(-k) holds structurally.
struct ModeSequence {
  cplx lambda = 0;
  std::vector<cplx> byAbsMode;  // index |k| = 0..K

  long max_mode() const { return static_cast<long>(byAbsMode.size()) - 1; }
  cplx operator()(long k) const { return byAbsMode.at(static_cast<std::size_t>(k < 0 ? -k : k)); }
};

}  // namespace evanskit
