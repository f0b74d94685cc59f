#pragma once

namespace mcf::cli {

// Parses argv, runs the requested pipeline, writes the JSON report to the
// --out file or stdout. Returns 0 on success, 2 on validation/parse errors,
// 3 on numerical failures; error reports carry a "stage" field.
int run(int argc, const char* const* argv);

} // namespace mcf::cli
