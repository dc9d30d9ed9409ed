#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sc {

// ids accepted by `sctool reproduce`
const std::vector<std::string>& experiment_ids();

// writes CSV/SVG/JSON files into out_dir and a short report to log;
// returns the process exit code (0 when every check in the run held)
int run_experiment(const std::string& id, unsigned seed, const std::string& out_dir, std::ostream& log);

}  // namespace sc
