// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Machine-readable records go to `out`, one JSON
// object per line; human-readable tables and diagnostics go to `err`.
//
// Exit codes: 0 success, 2 usage or input error, 3 solver failure,
// 4 halted on request after writing a checkpoint.

#ifndef QAE_CLI_HPP
#define QAE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qae
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitHalted = 4;

struct ManifestRow
{
  std::string label;
  std::string path;
};

// `label path` per line; '#' starts a comment. Relative paths are resolved
// against the manifest's directory.
std::vector<ManifestRow> parse_manifest(const std::string &manifest_path);

// args excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qae

#endif
