// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/errors.hpp"

namespace dsppa {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Argument: return 2;
    case ErrorKind::Io: return 3;
    case ErrorKind::Format: return 4;
    case ErrorKind::Parse: return 5;
    case ErrorKind::Data: return 6;
    case ErrorKind::Dimension: return 7;
    case ErrorKind::Numeric: return 8;
    case ErrorKind::Diverged: return 9;
    case ErrorKind::Precondition: return 10;
    case ErrorKind::Tuning: return 11;
  }
  return 1;
}

}  // namespace dsppa
