#pragma once

#include "workbench/ainf.hpp"

#include <fstream>
#include <sstream>
#include <string>

inline std::string fixture_text(const std::string& name) {
    std::ifstream in(std::string(WB_FIXTURES) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline wb::FilteredAInfCategory fixture_category(const std::string& name) {
    return wb::parse_category(fixture_text(name));
}
