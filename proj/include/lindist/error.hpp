// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_ERROR_HPP
#define LINDIST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lindist {

// Stable failure categories; the C API exposes these as integer codes.
enum class errc : int {
  ok = 0,
  invalid_input = 1,       // non-finite entries, bad arguments
  singular_matrix = 2,     // rank-deficient input where full rank is required
  degenerate_spectrum = 3, // repeated singular values: no strict normal form
  nonsmooth_point = 4,     // extreme eigenvalue not simple, derivative undefined
  pole = 5,                // evaluation at a pole of a rational expression
  inconsistent = 6,        // internal cross-check failed
  io_error = 7,
};

const char* errc_message(errc c) noexcept;

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace lindist

#endif
