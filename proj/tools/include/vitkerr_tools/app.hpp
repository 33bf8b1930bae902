#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vitkerr::tools {

// Entry point of the vitkerr executable. args excludes the program name.
// Returns the process exit status (0 ok, 2 config, 3 degeneracy, 4 threshold).
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Path of the sidecar manifest written next to a data file.
std::string manifest_path(const std::string& data_path);
// Path of the summary table written next to a CSV data file.
std::string summary_path(const std::string& data_path);

}  // namespace vitkerr::tools
