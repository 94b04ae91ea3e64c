#pragma once

#include <iosfwd>

namespace gensmooth {

/// Entry point of the `gensmooth` tool. Returns 0 on success, 1 when a
/// verification fails and 2 on usage or configuration errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gensmooth
