#pragma once
#include <map>
#include <string>
#include <vector>

#include "ambc/config.hpp"

namespace ambc {

// Canned experiment bundles reproducing the standard result set. Each preset
// writes one CSV per sub-curve into out_dir plus <preset>_manifest.txt
// listing the seed and the files. `base` carries user settings (seed,
// workers, scale, fidelity, ...); `flag_overrides` are applied after the
// preset's own deltas, so explicit flags always win.
std::vector<std::string> preset_names();

std::vector<std::string> run_preset(const std::string& name,
                                    const Settings& base,
                                    const std::map<std::string, std::string>&
                                        flag_overrides);

}  // namespace ambc
