// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace voicelens {

// Kernels with a data-parallel loop take this switch. kSerial is the plain
// reference loop; kParallel distributes the same loop over OpenMP threads and
// must produce identical results.
enum class Execution { kSerial, kParallel };

// Threads OpenMP would use for a parallel region (1 without OpenMP).
int max_threads();

}  // namespace voicelens
