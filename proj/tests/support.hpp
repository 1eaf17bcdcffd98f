#pragma once

#include <string>

inline std::string fixture(const std::string& name) {
  return std::string(REEB_ORBIT_DATA_DIR) + "/fixtures/" + name + ".json";
}
