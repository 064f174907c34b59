#pragma once

#include <string>

#include "grw/io.hpp"

namespace grw_test {

inline std::string fixture_path(const std::string& name) {
  return std::string(GRW_FIXTURE_DIR) + "/" + name;
}

inline std::string fixture_text(const std::string& name) {
  return grw::read_file(fixture_path(name));
}

inline grw::GRS fixture_grs(const std::string& name) {
  return grw::load_grs(fixture_path(name));
}

inline grw::Graph fixture_graph(const std::string& name,
                                const grw::AlphabetsPtr& alphabets) {
  return grw::load_graph(fixture_path(name), alphabets);
}

}  // namespace grw_test
