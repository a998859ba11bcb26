// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist/error.hpp"

namespace lindist {

const char* errc_message(errc c) noexcept {
  switch (c) {
    case errc::ok: return "ok";
    case errc::invalid_input: return "invalid input";
    case errc::singular_matrix: return "singular matrix";
    case errc::degenerate_spectrum: return "degenerate spectrum";
    case errc::nonsmooth_point: return "extreme eigenvalue not simple";
    case errc::pole: return "evaluation at a pole";
    case errc::inconsistent: return "internal cross-check failed";
    case errc::io_error: return "i/o error";
  }
  return "unknown error";
}

}  // namespace lindist
