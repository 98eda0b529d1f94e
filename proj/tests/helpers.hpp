#pragma once

#include <string>

#include "psmatch/io.hpp"

namespace psmatch::testing {

inline std::string fixture(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

inline Instance load_fixture(const std::string& name) {
    auto outcome = load_instance_file(fixture(name));
    if (!outcome.ok())
        throw std::runtime_error("fixture does not load: " + name);
    return *outcome.instance;
}

}  // namespace psmatch::testing
