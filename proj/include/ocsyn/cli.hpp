#pragma once

namespace ocsyn {

/// Batch entry point: parses argv, runs one subcommand, writes the JSON
/// report to stdout or --out. Returns 0 on success (a controller counts as
/// success), 2 when synthesis proves no controller exists, 1 on input or
/// validation errors.
int run_cli(int argc, char** argv);

}  // namespace ocsyn
