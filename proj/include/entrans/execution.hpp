#pragma once

namespace entrans {

// Serial is the reference implementation; Parallel distributes independent
// work items over OpenMP threads. Both must produce bit-identical results:
// every work item writes to its own slot and reductions run in a fixed order.
enum class ExecPolicy { Serial, Parallel };

} // namespace entrans
