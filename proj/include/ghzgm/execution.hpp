#pragma once

namespace ghzgm {

/// Kernels with independent work items come in a serial reference form and an
/// OpenMP form. Both produce identical results for identical inputs: work items
/// carry their own derived seeds and reductions are done in index order.
enum class Execution { serial, parallel };

}  // namespace ghzgm
