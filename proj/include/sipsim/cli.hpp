#pragma once

#include <ostream>

namespace sipsim {

// Exit codes: 0 success, 1 configuration or validation error, 2 compute or
// I/O error. Catalog listings go to `out`; progress and summaries to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sipsim
