#pragma once

#include <string>
#include <vector>

namespace mmb::harness {

struct Preset {
  std::string name;
  std::string summary;
  std::string text;  // config file contents
};

const std::vector<Preset>& presets();

// Returns nullptr if there is no preset with that name.
const Preset* find_preset(const std::string& name);

}  // namespace mmb::harness
