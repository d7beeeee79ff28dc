#pragma once

#include <fstream>
#include <sstream>
#include <string>

namespace viphon::testkit {

inline std::string data_path(const std::string& name) { return std::string(VIPHON_TEST_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace viphon::testkit
